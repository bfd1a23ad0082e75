//! End-to-end tests of the command-line interface: exit codes, JSON
//! schema, and byte-level determinism.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grtcheck"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn verify_pass_exit_zero() {
    let out = run(&["verify", "sigma4-annihilates"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("pass"), "{}", text);
}

#[test]
fn unknown_check_exit_two() {
    let out = run(&["verify", "no-such-check"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_pair_flags_exit_two() {
    let out = run(&["verify", "cond-ij"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["verify", "aux-ij", "--i", "4", "--j", "6"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_space_exit_two() {
    let out = run(&["hilbert", "nope"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["basis", "nope", "--weight", "4"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["dump-poly", "nope"]);
    assert_eq!(out.status.code(), Some(2));
    // out-of-range weight for a graded piece that starts at weight 8
    let out = run(&["basis", "M0min", "--weight", "4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn two_var_usage_error() {
    let out = run(&["hilbert", "A", "--two-var", "--max-weight", "4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn json_schema_and_determinism() {
    let args = [
        "--json",
        "verify",
        "cond-ij",
        "--i",
        "3",
        "--j",
        "7",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    // byte-identical across invocations
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    for key in ["check", "params", "status", "weights", "witness"] {
        assert!(v.get(key).is_some(), "missing key {}", key);
    }
    assert_eq!(v["check"], "cond-ij");
    assert_eq!(v["status"], "pass");
    assert!(v["witness"].is_null());
    let row = &v["weights"][0];
    for key in ["w", "d", "computed", "expected", "ok"] {
        assert!(row.get(key).is_some(), "missing row key {}", key);
    }
}

#[test]
fn hilbert_a_low_weights() {
    let out = run(&["--json", "hilbert", "A", "--max-weight", "6"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let dims: Vec<i64> = v["weights"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["computed"].as_i64().unwrap())
        .collect();
    assert_eq!(dims, vec![1, 0, 1, 1, 2, 2, 4]);
    assert!(v["weights"]
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["ok"].as_bool().unwrap()));
}

#[test]
fn basis_dump_determinism() {
    let args = ["--json", "basis", "A", "--weight", "6"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn basis_dumps() {
    // one generator in the depth-1 piece at weight 5
    let out = run(&["--json", "basis", "lieW1", "--weight", "5"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let els = v["elements"].as_array().unwrap();
    assert_eq!(els.len(), 1);
    assert_eq!(els[0]["basis"], "lyndon-xy");
    assert_eq!(els[0]["terms"][0]["word"], "xxxxy");
    // the degree-0 module piece is one-dimensional at weight 8
    let out = run(&["--json", "basis", "M0min", "--weight", "8"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["elements"].as_array().unwrap().len(), 1);
    // invariant ring at weight 2: a single generator
    let out = run(&["--json", "basis", "A", "--weight", "2"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["elements"].as_array().unwrap().len(), 1);
}

#[test]
fn dump_poly_format() {
    let out = run(&["--json", "dump-poly", "sigma-tilde", "--k", "2"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(
        v["vars"],
        serde_json::json!(["A", "B", "Ap", "Bp"])
    );
    let terms = v["terms"].as_array().unwrap();
    assert!(!terms.is_empty());
    // coefficients in p/q form, exponent vectors of length 4
    for t in terms {
        assert_eq!(t["e"].as_array().unwrap().len(), 4);
        let c = t["c"].as_str().unwrap();
        assert!(c.contains('/'), "coefficient {} not in p/q form", c);
    }
    // terms sorted under the canonical monomial order: weights ascending
    let p_bold = run(&["--json", "dump-poly", "p-bold", "--i", "3", "--j", "7"]);
    let v: serde_json::Value = serde_json::from_slice(&p_bold.stdout).unwrap();
    assert_eq!(v["vars"], serde_json::json!(["x2", "x6"]));
}

#[test]
fn out_file_writes_report() {
    let dir = std::env::temp_dir().join("grtcheck-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = run(&[
        "--json",
        "--out",
        path.to_str().unwrap(),
        "verify",
        "lambda-divisibility",
        "--max-weight",
        "9",
    ]);
    assert!(out.status.success());
    let contents = std::fs::read_to_string(&path).unwrap();
    let v: serde_json::Value = serde_json::from_str(&contents).unwrap();
    assert_eq!(v["status"], "pass");
}
