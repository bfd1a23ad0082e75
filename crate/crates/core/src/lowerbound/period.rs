//! Period polynomials and the relation space of the projected `tau`
//! family, two independent computations of the same dimensions.

use super::maps::{ev_bbp0, tau};
use crate::exactpoly::linalg::{MonoIndex, Solver, SparseVec};
use crate::exactpoly::poly::{Ambient, PeriodVar, Poly};
use crate::exactpoly::rat::{rat_i, Rat};
use crate::invariants::InvariantRing;
use crate::oracle;
use crate::report::CheckReport;
use num_traits::Zero;

type PPoly = Poly<PeriodVar>;

/// The slash action `(P|gamma)(X) = (cX+d)^{n-2} P((aX+b)/(cX+d))` on
/// polynomials of degree `<= n-2`.
pub fn slash(p: &PPoly, gamma: [[i64; 2]; 2], n: u32) -> PPoly {
    let [[a, b], [c, d]] = gamma;
    let num = PPoly::var(0)
        .scale(&rat_i(a))
        .add(&PPoly::constant(rat_i(b)));
    let den = PPoly::var(0)
        .scale(&rat_i(c))
        .add(&PPoly::constant(rat_i(d)));
    let mut out = PPoly::zero();
    for (m, coeff) in p.terms() {
        let k = m.e[0] as u32;
        debug_assert!(k <= n - 2);
        out = out.add(&num.pow(k).mul(&den.pow(n - 2 - k)).scale(coeff));
    }
    out
}

const S_MAT: [[i64; 2]; 2] = [[0, -1], [1, 0]];
const U_MAT: [[i64; 2]; 2] = [[1, -1], [1, 0]];
const U2_MAT: [[i64; 2]; 2] = [[0, -1], [1, -1]];

/// Dimensions attached to even weight `n`: the space of even period
/// polynomials `W_n^+`, its codimension-one subspace `Sigma_n` of
/// polynomials vanishing at 0, and (independently) the relation space
/// `R_n` of the projected `tau_{ij}` of total weight `n`.
pub struct PeriodDims {
    pub w_plus: usize,
    pub sigma: usize,
    pub relations: usize,
    pub pairs: usize,
}

/// Basis vectors of `W_n^+` in the even-coefficient coordinates.
pub fn w_plus_basis(n: u32) -> Vec<SparseVec> {
    if n % 2 == 1 || n < 4 {
        return Vec::new();
    }
    // unknowns: even powers X^k, k = 0, 2, ..., n-2
    let half = ((n - 2) / 2 + 1) as usize;
    let coords = |p: &PPoly| -> SparseVec {
        // constraint rows live in degree <= n-2 coefficient space
        SparseVec::from_entries(
            p.terms()
                .map(|(m, c)| (m.e[0] as u32, c.clone()))
                .collect(),
        )
    };
    let mut solver = Solver::new();
    for idx in 0..half {
        let k = 2 * idx as u16;
        let b = PPoly::var_pow(0, k);
        let r1 = b.add(&slash(&b, S_MAT, n));
        let r2 = b
            .add(&slash(&b, U_MAT, n))
            .add(&slash(&b, U2_MAT, n));
        // stack the two conditions into one long vector
        let v1 = coords(&r1);
        let v2 = coords(&r2).shifted(n);
        let mut entries = v1.entries;
        entries.extend(v2.entries);
        solver.push(SparseVec::from_entries(entries));
    }
    solver.kernel().to_vec()
}

/// All period-space dimensions at even weight `n`.
pub fn period_dims(ring: &InvariantRing, n: u32) -> PeriodDims {
    if n % 2 == 1 {
        return PeriodDims {
            w_plus: 0,
            sigma: 0,
            relations: 0,
            pairs: 0,
        };
    }
    let kernel = w_plus_basis(n);
    let w_plus = kernel.len();
    // Sigma_n: kernel of evaluation at 0 (the coefficient of X^0, which is
    // unknown index 0)
    let mut eval_rank = 0usize;
    {
        let mut sub = crate::exactpoly::linalg::Subspace::new();
        for v in &kernel {
            let c0 = v.get(0).cloned().unwrap_or_else(Rat::zero);
            if !c0.is_zero()
                && sub.insert(SparseVec::from_entries(vec![(0, c0)]))
            {
                eval_rank += 1;
            }
        }
    }
    let sigma = w_plus - eval_rank;
    // relation space of the projected tau family
    let mut pairs = Vec::new();
    let mut i = 3;
    while 2 * i < n {
        let j = n - i;
        if j % 2 == 1 && j > i {
            pairs.push((i, j));
        }
        i += 2;
    }
    let index = MonoIndex::<Ambient>::new(n, None);
    let mut solver = Solver::new();
    for &(i, j) in &pairs {
        let t = ev_bbp0(&tau(ring, i, j));
        solver.push(index.vec(&t));
    }
    PeriodDims {
        w_plus,
        sigma,
        relations: solver.kernel().len(),
        pairs: pairs.len(),
    }
}

/// `period-dims`: the relation dimensions match the closed form, agree
/// with the period-polynomial kernel, and the pair counts match
/// `floor(n/4) - 1`.
pub fn verify_period_dims(ring: &InvariantRing, max_weight: u32) -> CheckReport {
    let t0 = std::time::Instant::now();
    let mut rep = CheckReport::new("period-dims").param("max_weight", max_weight);
    let rel_oracle = oracle::dims_relations(max_weight);
    let pair_oracle = oracle::dims_pair_space(max_weight);
    let mut n = 4;
    while n <= max_weight {
        let d = period_dims(ring, n);
        // pair count
        let expected_pairs = if n >= 8 { (n / 4 - 1) as i64 } else { 0 };
        if !rep.row(n, Some(0), d.pairs as i64, Some(expected_pairs)) {
            break;
        }
        if expected_pairs != pair_oracle[n as usize] {
            rep.fail_with(serde_json::json!({"n": n, "note": "pair-count oracle mismatch"}));
            break;
        }
        // relation dimension against the closed form, both routes
        if !rep.row(n, Some(1), d.relations as i64, Some(rel_oracle[n as usize])) {
            break;
        }
        if !rep.row(n, Some(2), d.sigma as i64, Some(rel_oracle[n as usize])) {
            break;
        }
        // dim W^+ = dim S_n + 1
        if !rep.row(n, Some(3), d.w_plus as i64, Some(rel_oracle[n as usize] + 1)) {
            break;
        }
        n += 2;
    }
    let mut rep = rep.finalize();
    rep.elapsed_ms = t0.elapsed().as_millis();
    rep
}
