//! Structured verdicts for named verification checks.

use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconsistent,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Pass => write!(f, "pass"),
            Status::Fail => write!(f, "fail"),
            Status::Inconsistent => write!(f, "inconsistent"),
        }
    }
}

/// One per-bigrade verdict row.
#[derive(Clone, Debug, Serialize)]
pub struct WeightRow {
    pub w: u32,
    pub d: Option<u32>,
    pub computed: i64,
    pub expected: Option<i64>,
    pub ok: bool,
}

/// Verdict of a named check. Deterministic for fixed inputs; the witness
/// is present exactly when the check did not pass.
#[derive(Clone, Debug)]
pub struct CheckReport {
    pub check_id: String,
    pub params: BTreeMap<String, String>,
    pub status: Status,
    pub weights: Vec<WeightRow>,
    pub witness: Option<serde_json::Value>,
    /// Wall-clock time; excluded from the serialized JSON payload so that
    /// identical invocations stay byte-identical.
    pub elapsed_ms: u128,
}

impl CheckReport {
    pub fn new(check_id: &str) -> Self {
        CheckReport {
            check_id: check_id.to_string(),
            params: BTreeMap::new(),
            status: Status::Pass,
            weights: Vec::new(),
            witness: None,
            elapsed_ms: 0,
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn set_param(&mut self, key: &str, value: impl ToString) {
        self.params.insert(key.to_string(), value.to_string());
    }

    /// Record a row; a failing row flips the overall status to fail.
    pub fn row(&mut self, w: u32, d: Option<u32>, computed: i64, expected: Option<i64>) -> bool {
        let ok = expected.map(|e| e == computed).unwrap_or(true);
        self.weights.push(WeightRow {
            w,
            d,
            computed,
            expected,
            ok,
        });
        if !ok {
            self.status = Status::Fail;
        }
        ok
    }

    /// Record a boolean identity verdict at a weight.
    pub fn check(&mut self, w: u32, d: Option<u32>, holds: bool) -> bool {
        self.row(w, d, holds as i64, Some(1))
    }

    pub fn fail_with(&mut self, witness: serde_json::Value) {
        self.status = Status::Fail;
        self.witness = Some(witness);
    }

    pub fn inconsistent_with(&mut self, witness: serde_json::Value) {
        self.status = Status::Inconsistent;
        self.witness = Some(witness);
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Ensure the witness invariant: present iff status != pass.
    pub fn finalize(mut self) -> Self {
        if self.status != Status::Pass && self.witness.is_none() {
            let first_bad: Vec<_> = self
                .weights
                .iter()
                .filter(|r| !r.ok)
                .take(3)
                .map(|r| {
                    serde_json::json!({
                        "w": r.w, "d": r.d, "computed": r.computed, "expected": r.expected,
                    })
                })
                .collect();
            self.witness = Some(serde_json::json!({ "failing_rows": first_bad }));
        }
        if self.status == Status::Pass {
            self.witness = None;
        }
        self
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "check": self.check_id,
            "params": self.params,
            "status": self.status,
            "weights": self.weights,
            "witness": self.witness,
        })
    }

    /// Aligned-text rendering for terminal output.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        use std::fmt::Write;
        let params = self
            .params
            .iter()
            .map(|(k, v)| format!("{}={}", k, v))
            .collect::<Vec<_>>()
            .join(" ");
        writeln!(out, "check {} [{}]: {}", self.check_id, params, self.status).unwrap();
        for r in &self.weights {
            let d = r.d.map(|d| format!(" d={:<2}", d)).unwrap_or_default();
            match r.expected {
                Some(e) => writeln!(
                    out,
                    "  w={:<3}{} computed={:<6} expected={:<6} {}",
                    r.w,
                    d,
                    r.computed,
                    e,
                    if r.ok { "ok" } else { "MISMATCH" }
                )
                .unwrap(),
                None => writeln!(out, "  w={:<3}{} computed={}", r.w, d, r.computed).unwrap(),
            }
        }
        if let Some(w) = &self.witness {
            writeln!(out, "  witness: {}", w).unwrap();
        }
        writeln!(out, "  elapsed: {} ms", self.elapsed_ms).unwrap();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witness_iff_not_pass() {
        let mut r = CheckReport::new("demo");
        r.row(8, None, 1, Some(1));
        let r = r.finalize();
        assert_eq!(r.status, Status::Pass);
        assert!(r.witness.is_none());

        let mut r = CheckReport::new("demo");
        r.row(8, None, 2, Some(1));
        let r = r.finalize();
        assert_eq!(r.status, Status::Fail);
        assert!(r.witness.is_some());
        let j = r.to_json();
        assert_eq!(j["check"], "demo");
        assert_eq!(j["status"], "fail");
    }
}
