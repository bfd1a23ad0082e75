//! Command-line verification harness: run named checks, print Hilbert
//! tables, dump bases and polynomials. Output is deterministic for fixed
//! inputs; exit code 0 means pass, 1 fail, 2 usage error.

use clap::{Args, Parser, Subcommand};
use grtcheck_core::depthgraded;
use grtcheck_core::invariants::{self, InvariantRing};
use grtcheck_core::lowerbound::{self, mmin, LowerBound};
use grtcheck_core::oracle;
use grtcheck_core::report::CheckReport;
use std::io::Write;
use std::process::ExitCode;
use std::sync::Arc;

#[derive(Parser)]
#[command(
    name = "grtcheck",
    version,
    about = "Exact verification of graded Lie algebra and invariant ring identities"
)]
struct Cli {
    /// Number of worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Emit reports as JSON instead of aligned text.
    #[arg(long, global = true)]
    json: bool,
    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a named verification check.
    Verify(VerifyArgs),
    /// Print a Hilbert series table for a named space.
    Hilbert(HilbertArgs),
    /// Dump a deterministically ordered basis of a graded piece.
    Basis(BasisArgs),
    /// Dump a named polynomial in the canonical JSON form.
    DumpPoly(DumpPolyArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Check identifier (see README for the list).
    check_id: String,
    /// Truncation weight.
    #[arg(long, default_value_t = 12)]
    max_weight: u32,
    /// Sigma-degree bound, where applicable.
    #[arg(long, default_value_t = 3)]
    sigma_degree: u32,
    /// First index for the per-pair checks.
    #[arg(long)]
    i: Option<u32>,
    /// Second index for the per-pair checks.
    #[arg(long)]
    j: Option<u32>,
}

#[derive(Args)]
struct HilbertArgs {
    /// One of: A, gr0A, grA, M0min, Mmin, lieW1, lieW2, lieW3, H-complex.
    space: String,
    #[arg(long, default_value_t = 12)]
    max_weight: u32,
    /// Show the bigraded table (spaces with a second grading only).
    #[arg(long)]
    two_var: bool,
    /// Sigma-degree bound for the bigraded tables.
    #[arg(long, default_value_t = 3)]
    sigma_degree: u32,
}

#[derive(Args)]
struct BasisArgs {
    /// One of: A, M0min, lieW1, lieW2, lieW3.
    space: String,
    #[arg(long)]
    weight: u32,
    /// Depth selector (none of the supported spaces needs one).
    #[arg(long)]
    depth: Option<u32>,
}

#[derive(Args)]
struct DumpPolyArgs {
    /// One of: sigma, sigma-tilde, lambda, tau, p-bold.
    name: String,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    i: Option<u32>,
    #[arg(long)]
    j: Option<u32>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global();
    }
    let mut sink: Box<dyn Write> = match &cli.out {
        None => Box::new(std::io::stdout()),
        Some(path) => match std::fs::File::create(path) {
            Ok(f) => Box::new(f),
            Err(e) => {
                eprintln!("cannot open {}: {}", path.display(), e);
                return ExitCode::from(2);
            }
        },
    };
    match &cli.command {
        Command::Verify(args) => run_verify(args, cli.json, &mut sink),
        Command::Hilbert(args) => run_hilbert(args, cli.json, &mut sink),
        Command::Basis(args) => run_basis(args, cli.json, &mut sink),
        Command::DumpPoly(args) => run_dump_poly(args, cli.json, &mut sink),
    }
}

fn emit_report(rep: &CheckReport, json: bool, sink: &mut dyn Write) -> ExitCode {
    if json {
        writeln!(
            sink,
            "{}",
            serde_json::to_string_pretty(&rep.to_json()).unwrap()
        )
        .unwrap();
    } else {
        write!(sink, "{}", rep.render_text()).unwrap();
    }
    if rep.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn emit_value(v: &serde_json::Value, json: bool, sink: &mut dyn Write) -> ExitCode {
    if json {
        writeln!(sink, "{}", serde_json::to_string_pretty(v).unwrap()).unwrap();
    } else {
        writeln!(sink, "{}", v).unwrap();
    }
    ExitCode::SUCCESS
}

fn need_pair(args: &VerifyArgs) -> Result<(u32, u32), ExitCode> {
    match (args.i, args.j) {
        (Some(i), Some(j)) if i % 2 == 1 && j % 2 == 1 && i >= 3 && j >= 3 => Ok((i, j)),
        _ => {
            eprintln!("this check requires odd --i and --j, both >= 3");
            Err(ExitCode::from(2))
        }
    }
}

fn run_verify(args: &VerifyArgs, json: bool, sink: &mut dyn Write) -> ExitCode {
    let ring = Arc::new(InvariantRing::new());
    let lb = LowerBound::new(ring.clone());
    let n = args.max_weight;
    let k = args.sigma_degree;
    let rep = match args.check_id.as_str() {
        "a-presentation" => invariants::verify_presentation_a(&ring, n),
        "molien" => invariants::verify_molien(&ring, n),
        "ideal-i35" => invariants::verify_ideal_i35(&ring, n),
        "gr0a-presentation" => invariants::verify_gr0a_presentation(&ring, n),
        "gra-polynomial" => invariants::verify_gra_polynomial(&ring, n, k),
        "cocycle-in-m" => mmin::verify_cocycle_in_m(&lb, n),
        "section-cocycle" => lowerbound::section::verify_section_cocycle(n),
        "lambda-divisibility" => mmin::verify_lambda_divisibility(n),
        "genfun-xy" => mmin::verify_genfun_xy(&lb, n),
        "aux-ij" => match need_pair(args) {
            Ok((i, j)) => mmin::verify_aux(&lb, i, j),
            Err(c) => return c,
        },
        "cond-ij" => match need_pair(args) {
            Ok((i, j)) => mmin::verify_cond(&lb, i, j),
            Err(c) => return c,
        },
        "sigma4-annihilates" => mmin::verify_sigma4_annihilates(&lb),
        "m0-cyclic" => mmin::verify_m0_cyclic(&lb, n),
        "period-dims" => lowerbound::period::verify_period_dims(&ring, n),
        "m0-hilbert" => mmin::verify_m0_hilbert(&lb, n),
        "phi-iso" => mmin::verify_phi(&lb, n, k),
        "action-formula" => mmin::verify_action_formula(&lb, n, 9.min(n)).report,
        "purity" => mmin::verify_purity(&lb, n, k),
        "mmin-hilbert" => mmin::verify_mmin_hilbert(&lb, n, k),
        "liew-dims" => depthgraded::verify_liew_dims([(1, n), (2, n), (3, n)]),
        "depth2-explicit" => depthgraded::verify_depth2_explicit(&lb, n),
        "depth3-sequence" => depthgraded::verify_depth3_sequence(n),
        "complex-homology" => depthgraded::verify_complex_homology(n),
        "test-map-injectivity" => depthgraded::verify_test_map_injectivity(n),
        other => {
            eprintln!("unknown check id `{}`", other);
            return ExitCode::from(2);
        }
    };
    emit_report(&rep, json, sink)
}

fn run_hilbert(args: &HilbertArgs, json: bool, sink: &mut dyn Write) -> ExitCode {
    let n = args.max_weight;
    let mut rep = CheckReport::new(&format!("hilbert-{}", args.space))
        .param("max_weight", n)
        .param("space", &args.space);
    if args.two_var && !matches!(args.space.as_str(), "Mmin" | "grA") {
        eprintln!("--two-var is only supported for Mmin and grA");
        return ExitCode::from(2);
    }
    match args.space.as_str() {
        "A" => {
            let ring = InvariantRing::new();
            let dims = ring.molien(n);
            let expect = oracle::dims_invariant_ring(n);
            use num_traits::ToPrimitive;
            for w in 0..=n {
                let c = dims[w as usize].to_integer().to_i64().unwrap();
                rep.row(w, None, c, Some(expect[w as usize]));
            }
        }
        "gr0A" => {
            let ring = InvariantRing::new();
            let expect = oracle::dims_gr0(n);
            for w in 0..=n {
                rep.row(w, None, ring.gr0_dim(w) as i64, Some(expect[w as usize]));
            }
        }
        "grA" => {
            let ring = InvariantRing::new();
            let gr0: Vec<i64> = (0..=n).map(|w| ring.gr0_dim(w) as i64).collect();
            for w in 0..=n {
                for kk in 0..=args.sigma_degree.min(w / 3) {
                    let mut expect = 0i64;
                    for a in 0..=kk {
                        let b = kk - a;
                        let ww = 3 * a + 5 * b;
                        if ww <= w {
                            expect += gr0[(w - ww) as usize];
                        }
                    }
                    rep.row(w, Some(kk), ring.gr_dim(kk, w) as i64, Some(expect));
                }
            }
        }
        "M0min" => {
            let lb = LowerBound::new(Arc::new(InvariantRing::new()));
            let expect = oracle::dims_m0min(n);
            for w in 4..=n {
                rep.row(w, None, lb.mmin_dim(0, w) as i64, Some(expect[w as usize]));
            }
        }
        "Mmin" => {
            let lb = LowerBound::new(Arc::new(InvariantRing::new()));
            if args.two_var {
                let table = oracle::dims_mmin2(n, args.sigma_degree + 2);
                for w in 8..=n {
                    for kk in 0..=args.sigma_degree {
                        rep.row(
                            w,
                            Some(kk),
                            lb.mmin_dim(kk, w) as i64,
                            Some(table[w as usize][(kk + 2) as usize]),
                        );
                    }
                }
            } else {
                let single = oracle::dims_mmin1(n);
                for w in 8..=n {
                    let total: i64 = (0..=args.sigma_degree)
                        .map(|kk| lb.mmin_dim(kk, w) as i64)
                        .sum();
                    // the closed form only bounds the total when every
                    // contributing Sigma-degree is inside the bound
                    let expect = (3 * (args.sigma_degree + 1) + 8 > w)
                        .then(|| single[w as usize]);
                    rep.row(w, None, total, expect);
                }
            }
        }
        "lieW1" | "lieW2" | "lieW3" => {
            let k: u32 = args.space[4..].parse().unwrap();
            let expect = oracle::dims_liew(k, n);
            for w in 3..=n {
                rep.row(
                    w,
                    None,
                    depthgraded::liew_dim(k, w) as i64,
                    Some(expect[w as usize]),
                );
            }
        }
        "H-complex" => {
            let expect = oracle::dims_homology(n);
            for w in 9..=n {
                let c = depthgraded::complex_at_weight(w);
                rep.row(w, None, c.homology as i64, Some(expect[w as usize]));
            }
        }
        other => {
            eprintln!("unknown space `{}`", other);
            return ExitCode::from(2);
        }
    }
    let rep = rep.finalize();
    emit_report(&rep, json, sink)
}

fn run_basis(args: &BasisArgs, json: bool, sink: &mut dyn Write) -> ExitCode {
    if args.depth.is_some() {
        eprintln!("--depth is not supported for space `{}`", args.space);
        return ExitCode::from(2);
    }
    let w = args.weight;
    let payload: serde_json::Value = match args.space.as_str() {
        "A" => {
            let ring = InvariantRing::new();
            let basis = ring.basis(w);
            serde_json::json!({
                "space": "A", "weight": w,
                "elements": basis.polys.iter().map(|p| {
                    serde_json::to_value(p.primitive_integer_form().to_json()).unwrap()
                }).collect::<Vec<_>>(),
            })
        }
        "M0min" => {
            if w < 8 {
                eprintln!("the degree-0 piece starts in weight 8");
                return ExitCode::from(2);
            }
            let lb = LowerBound::new(Arc::new(InvariantRing::new()));
            // independent representatives modulo I·M
            let index = lb.mono_index(w);
            let mut sub = (*lb.ikm(1, w)).clone();
            let mut reps = Vec::new();
            for p in lb.mk_lifts(0, w) {
                if sub.insert(index.vec(&p)) {
                    reps.push(p);
                }
            }
            serde_json::json!({
                "space": "M0min", "weight": w,
                "elements": reps.iter().map(|p| {
                    serde_json::to_value(p.primitive_integer_form().to_json()).unwrap()
                }).collect::<Vec<_>>(),
            })
        }
        "lieW1" | "lieW2" | "lieW3" => {
            let k: u32 = args.space[4..].parse().unwrap();
            let index: std::collections::HashMap<_, _> =
                grtcheck_core::freelie::words_of_bigrade(w, k)
                    .into_iter()
                    .enumerate()
                    .map(|(i, word)| (word, i as u32))
                    .collect();
            let mut sub = grtcheck_core::exactpoly::Subspace::new();
            let mut elements = Vec::new();
            for p in depthgraded::liew_spanning(k, w) {
                let v = grtcheck_core::exactpoly::SparseVec::from_entries(
                    p.terms()
                        .map(|(word, c)| (index[word], c.clone()))
                        .collect(),
                );
                if sub.insert(v) {
                    elements.push(
                        grtcheck_core::freelie::LieElt::from_assoc(&p)
                            .expect("spanning bracket is Lie")
                            .to_json(),
                    );
                }
            }
            serde_json::json!({
                "space": args.space, "weight": w,
                "elements": elements,
            })
        }
        other => {
            eprintln!("unknown basis space `{}`", other);
            return ExitCode::from(2);
        }
    };
    emit_value(&payload, json, sink)
}

fn run_dump_poly(args: &DumpPolyArgs, json: bool, sink: &mut dyn Write) -> ExitCode {
    let need_k = |name: &str| {
        eprintln!("dump-poly {} requires --k", name);
        ExitCode::from(2)
    };
    let payload = match args.name.as_str() {
        "sigma-tilde" => match args.k {
            Some(k) => serde_json::to_value(invariants::sigma_tilde(k).to_json()).unwrap(),
            None => return need_k("sigma-tilde"),
        },
        "sigma" => match args.k {
            Some(k) => serde_json::to_value(invariants::sigma_small(k).to_json()).unwrap(),
            None => return need_k("sigma"),
        },
        "lambda" => match args.k {
            Some(k) if k % 2 == 1 && k >= 3 => {
                serde_json::to_value(lowerbound::lambda_k(k).to_json()).unwrap()
            }
            _ => {
                eprintln!("dump-poly lambda requires odd --k >= 3");
                return ExitCode::from(2);
            }
        },
        "tau" => match (args.i, args.j) {
            (Some(i), Some(j)) if i % 2 == 1 && j % 2 == 1 && i >= 3 && j >= 3 => {
                let ring = InvariantRing::new();
                serde_json::to_value(lowerbound::tau(&ring, i, j).to_json()).unwrap()
            }
            _ => {
                eprintln!("dump-poly tau requires odd --i and --j, both >= 3");
                return ExitCode::from(2);
            }
        },
        "p-bold" => match (args.i, args.j) {
            (Some(i), Some(j)) if i % 2 == 1 && j % 2 == 1 && i >= 3 && j >= 3 => {
                serde_json::to_value(lowerbound::genfun::p_bold(i, j).to_json()).unwrap()
            }
            _ => {
                eprintln!("dump-poly p-bold requires odd --i and --j, both >= 3");
                return ExitCode::from(2);
            }
        },
        other => {
            eprintln!("unknown polynomial `{}`", other);
            return ExitCode::from(2);
        }
    };
    emit_value(&payload, json, sink)
}
