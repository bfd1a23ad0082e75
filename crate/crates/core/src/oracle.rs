//! Independent series oracles.
//!
//! The expected dimension tables used by the verification checks are
//! produced here by expanding closed-form rational generating functions
//! with plain integer arithmetic, with no dependence on the algebraic
//! machinery they are checked against.

/// Expand `num(t) / prod_k (1 - t^{den[k]})` to order `n`.
///
/// `num` is a list of `(exponent, coefficient)` pairs.
pub fn expand_rational(num: &[(u32, i64)], den: &[u32], n: u32) -> Vec<i64> {
    let n = n as usize;
    let mut c = vec![0i64; n + 1];
    for &(e, a) in num {
        if (e as usize) <= n {
            c[e as usize] += a;
        }
    }
    // repeatedly multiply by the geometric series 1/(1 - t^d)
    for &d in den {
        let d = d as usize;
        assert!(d > 0);
        for k in d..=n {
            c[k] += c[k - d];
        }
    }
    c
}

/// Coefficients of `num(t,u) / prod_k (1 - t^{a_k} u^{b_k})` up to total
/// weight `n` in `t`; returns a dense table `c[i][j]` with `i <= n` and
/// `j <= maxu`.
pub fn expand_rational2(
    num: &[(u32, u32, i64)],
    den: &[(u32, u32)],
    n: u32,
    maxu: u32,
) -> Vec<Vec<i64>> {
    let (n, maxu) = (n as usize, maxu as usize);
    let mut c = vec![vec![0i64; maxu + 1]; n + 1];
    for &(i, j, a) in num {
        if (i as usize) <= n && (j as usize) <= maxu {
            c[i as usize][j as usize] += a;
        }
    }
    for &(a, b) in den {
        let (a, b) = (a as usize, b as usize);
        assert!(a > 0 || b > 0);
        for i in 0..=n {
            for j in 0..=maxu {
                if i >= a && j >= b {
                    c[i][j] += c[i - a][j - b];
                }
            }
        }
    }
    c
}

/// Molien series of the invariant ring: `(1 + t^5) / ((1-t^2)(1-t^3)(1-t^4)(1-t^6))`.
pub fn dims_invariant_ring(n: u32) -> Vec<i64> {
    expand_rational(&[(0, 1), (5, 1)], &[2, 3, 4, 6], n)
}

/// `gr^0` of the invariant ring: `(1 - t^10) / ((1-t^2)(1-t^4)(1-t^6))`.
pub fn dims_gr0(n: u32) -> Vec<i64> {
    expand_rational(&[(0, 1), (10, -1)], &[2, 4, 6], n)
}

/// The degree-0 piece of the lower-bound module: `t^8 / ((1-t^2)(1-t^6))`.
pub fn dims_m0min(n: u32) -> Vec<i64> {
    expand_rational(&[(8, 1)], &[2, 6], n)
}

/// Relation space of the bar-tau family: `t^12 / ((1-t^4)(1-t^6))`.
pub fn dims_relations(n: u32) -> Vec<i64> {
    expand_rational(&[(12, 1)], &[4, 6], n)
}

/// Antisymmetric index pairs: `t^8 / ((1-t^2)(1-t^4))`.
pub fn dims_pair_space(n: u32) -> Vec<i64> {
    expand_rational(&[(8, 1)], &[2, 4], n)
}

/// Two-variable series of the full lower-bound module:
/// `t^8 u^2 / ((1-t^2)(1-t^6)(1-u t^3)(1-u t^5))`.
/// Entry `[n][k]` is the dimension in weight `n` and Sigma-degree `k - 2`.
pub fn dims_mmin2(n: u32, maxu: u32) -> Vec<Vec<i64>> {
    expand_rational2(
        &[(8, 2, 1)],
        &[(2, 0), (6, 0), (3, 1), (5, 1)],
        n,
        maxu,
    )
}

/// One-variable specialization of the lower-bound module:
/// `t^8 / ((1-t^2)(1-t^3)(1-t^5)(1-t^6))`.
pub fn dims_mmin1(n: u32) -> Vec<i64> {
    expand_rational(&[(8, 1)], &[2, 3, 5, 6], n)
}

/// Depth-k pieces of the depth-graded Lie algebra, k = 1, 2, 3.
pub fn dims_liew(k: u32, n: u32) -> Vec<i64> {
    match k {
        1 => expand_rational(&[(3, 1)], &[2], n),
        2 => expand_rational(&[(8, 1)], &[2, 6], n),
        3 => expand_rational(&[(11, 1), (13, 1), (15, -1)], &[2, 4, 6], n),
        _ => panic!("no closed-form series quoted for depth {}", k),
    }
}

/// Image of the depth-3 test map: `t^8 (t^3 + t^5) / ((1-t^2)(1-t^6))`.
pub fn dims_test_map_image(n: u32) -> Vec<i64> {
    expand_rational(&[(11, 1), (13, 1)], &[2, 6], n)
}

/// Middle homology of the three-term complex: `t^17 / ((1-t^2)(1-t^4)(1-t^6))`.
pub fn dims_homology(n: u32) -> Vec<i64> {
    expand_rational(&[(17, 1)], &[2, 4, 6], n)
}

/// `Lambda^3` of the odd-generator space: weights `i+j+k`, `3 <= i < j < k` odd.
pub fn dims_lambda3_sigma(n: u32) -> Vec<i64> {
    let mut c = vec![0i64; n as usize + 1];
    let mut i = 3;
    while i <= n {
        let mut j = i + 2;
        while j <= n {
            let mut k = j + 2;
            while k <= n {
                if i + j + k <= n {
                    c[(i + j + k) as usize] += 1;
                }
                k += 2;
            }
            j += 2;
        }
        i += 2;
    }
    c
}

/// Dimensions of the odd-generator space itself: one σ_k per odd k >= 3.
pub fn dims_sigma(n: u32) -> Vec<i64> {
    let mut c = vec![0i64; n as usize + 1];
    for k in (3..=n).step_by(2) {
        c[k as usize] = 1;
    }
    c
}
