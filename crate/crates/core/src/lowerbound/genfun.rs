//! Generating-function apparatus: the invariants `s = A^2+AB+B^2`,
//! `p = AB`, `pi = p^2 s + p^3`, the module decomposition of `Q[s,p]` over
//! `Q[s,pi]`, the series `X, Y, D`, the bracket coefficient polynomials
//! `P_{ij}(x2, x6)`, and the series `xi_3, xi_5` in both sign conventions.

use super::maps::{lambda_k, APoly};
use crate::exactpoly::linalg::{MonoIndex, Solver};
use crate::exactpoly::poly::{ambient, Ambient, Mono, Poly, SigmaPiP, X26};
use crate::exactpoly::rat::{rat, rat_i};
use crate::exactpoly::series::Series1;
use crate::invariants::InvariantRing;
use num_traits::Zero;

pub type SpPoly = Poly<SigmaPiP>;
pub type XPoly = Poly<X26>;

pub const SVAR: usize = 0; // s
pub const PIVAR: usize = 1; // pi
pub const PVAR: usize = 2; // p

/// `s = A^2 + AB + B^2` in the ambient ring.
pub fn s_ab() -> APoly {
    let a = ambient::a();
    let b = ambient::b();
    a.pow(2).add(&a.mul(&b)).add(&b.pow(2))
}

/// `p = AB`.
pub fn p_ab() -> APoly {
    ambient::a().mul(&ambient::b())
}

/// `pi = p^2 s + p^3`.
pub fn pi_ab() -> APoly {
    let p = p_ab();
    p.pow(2).mul(&s_ab()).add(&p.pow(3))
}

/// Express an even, swap-symmetric polynomial of `Q[A,B]` in terms of
/// `s, p` (exact solve, weight by weight).
pub fn to_sigma_p(h: &APoly) -> SpPoly {
    assert!(
        !h.uses_var(ambient::AP) && !h.uses_var(ambient::BP),
        "input must live in Q[A,B]"
    );
    let mut out = SpPoly::zero();
    let s = s_ab();
    let p = p_ab();
    let weights: std::collections::BTreeSet<u32> = h.terms().map(|(m, _)| m.weight()).collect();
    for w in weights {
        assert!(w % 2 == 0, "not an even polynomial");
        let piece = h.weight_component(w);
        let index = MonoIndex::<Ambient>::new(w, None);
        let mut solver = Solver::new();
        let mut monos = Vec::new();
        for i in 0..=(w / 2) {
            let j = w / 2 - i;
            solver.push(index.vec(&s.pow(i).mul(&p.pow(j))));
            monos.push((i as u16, j as u16));
        }
        let coeffs = solver
            .solve(&index.vec(&piece))
            .expect("polynomial is not in Q[s, p]");
        for ((i, j), c) in monos.into_iter().zip(coeffs) {
            if !c.is_zero() {
                out.add_term(Mono::new([i, 0, j, 0]), c);
            }
        }
    }
    out
}

/// Substitute `s, pi, p` by their expressions in `A, B`.
pub fn spp_to_ab(f: &SpPoly) -> APoly {
    f.subst(&[s_ab(), pi_ab(), p_ab()])
}

/// Decompose an element of `Q[s, p]` along the free module decomposition
/// `Q[s,p] = Q[s,pi] ⊕ Q[s,pi]·p ⊕ Q[s,pi]·p^2`, by rewriting
/// `p^3 = pi - s·p^2`. The result is verified by substituting back.
pub fn decompose_p(f: &SpPoly) -> [SpPoly; 3] {
    let mut work = f.clone();
    loop {
        let mut changed = false;
        let mut next = SpPoly::zero();
        for (m, c) in work.terms() {
            if m.e[PVAR] >= 3 {
                changed = true;
                // p^e = p^{e-3} (pi - s p^2)
                let mut base = *m;
                base.e[PVAR] -= 3;
                let mut with_pi = base;
                with_pi.e[PIVAR] += 1;
                next.add_term(with_pi, c.clone());
                let mut with_sp2 = base;
                with_sp2.e[SVAR] += 1;
                with_sp2.e[PVAR] += 2;
                next.add_term(with_sp2, -c.clone());
            } else {
                next.add_term(*m, c.clone());
            }
        }
        work = next;
        if !changed {
            break;
        }
    }
    let mut parts = [SpPoly::zero(), SpPoly::zero(), SpPoly::zero()];
    for (m, c) in work.terms() {
        let e = m.e[PVAR] as usize;
        let mut base = *m;
        base.e[PVAR] = 0;
        parts[e].add_term(base, c.clone());
    }
    // verification: substituting pi = s p^2 + p^3 back reproduces f
    let back = spp_to_ab(
        &parts[0]
            .add(&parts[1].mul(&SpPoly::var(PVAR)))
            .add(&parts[2].mul(&SpPoly::var_pow(PVAR, 2))),
    );
    assert_eq!(back, spp_to_ab(f), "module decomposition failed");
    parts
}

fn sp_const(n: i64, d: i64) -> SpPoly {
    SpPoly::constant(rat(n, d))
}

/// `X(s, pi, t) = 2t^3 - 3 s t^5 + (4/3) s^2 t^7 + (2 pi - s^3/3) t^9
///  - (1/3) pi s t^11`.
pub fn series_x(order: usize) -> Series1<SpPoly> {
    let s = SpPoly::var(SVAR);
    let pi = SpPoly::var(PIVAR);
    Series1::from_coeffs(
        order,
        [
            (3, sp_const(2, 1)),
            (5, s.scale(&rat_i(-3))),
            (7, s.pow(2).scale(&rat(4, 3))),
            (9, pi.scale(&rat_i(2)).sub(&s.pow(3).scale(&rat(1, 3)))),
            (11, pi.mul(&s).scale(&rat(-1, 3))),
        ],
    )
}

/// `Y(s, pi, t) = (5/3) t^5 - 2 s t^7 + (1/3) s^2 t^9 + (1/3) pi t^11`.
pub fn series_y(order: usize) -> Series1<SpPoly> {
    let s = SpPoly::var(SVAR);
    let pi = SpPoly::var(PIVAR);
    Series1::from_coeffs(
        order,
        [
            (5, sp_const(5, 3)),
            (7, s.scale(&rat_i(-2))),
            (9, s.pow(2).scale(&rat(1, 3))),
            (11, pi.scale(&rat(1, 3))),
        ],
    )
}

/// `D(s, pi, t) = (1 - 2 s t^2 + s^2 t^4 - pi t^6)^2`.
pub fn series_d(order: usize) -> Series1<SpPoly> {
    let s = SpPoly::var(SVAR);
    let pi = SpPoly::var(PIVAR);
    let base = Series1::from_coeffs(
        order,
        [
            (0, SpPoly::one()),
            (2, s.scale(&rat_i(-2))),
            (4, s.pow(2)),
            (6, pi.neg()),
        ],
    );
    base.mul(&base)
}

/// `X/D` and `Y/D` to the given order.
pub fn series_xd_yd(order: usize) -> (Series1<SpPoly>, Series1<SpPoly>) {
    let dinv = series_d(order).invert().expect("D has constant term 1");
    (series_x(order).mul(&dinv), series_y(order).mul(&dinv))
}

/// The symmetrized ratio
/// `((lambda_i|_{B'=0} / lambda_3|_{B'=0})|_{A'=0} + (A <-> B))`, an even
/// swap-symmetric element of `Q[A,B]`.
pub fn sym_lambda_ratio(i: u32) -> APoly {
    let l3 = lambda_k(3).set_var_zero(ambient::BP);
    let li = lambda_k(i).set_var_zero(ambient::BP);
    let q = li
        .exact_div(&l3)
        .expect("lambda_3 restriction divides every odd lambda_i restriction");
    let q0 = q.set_var_zero(ambient::AP);
    q0.add(&ambient::swap_letters(&q0).set_var_zero(ambient::AP))
}

/// Check the module decomposition of the symmetrized lambda ratios against
/// `X/D + (Y/D)·p + 0·p^2`, for all odd `i <= n`. Returns the first failing
/// component on error.
pub fn lambda_ratio_decomposition_ok(i: u32, xd: &Series1<SpPoly>, yd: &Series1<SpPoly>) -> bool {
    let h = sym_lambda_ratio(i);
    let parts = decompose_p(&to_sigma_p(&h));
    parts[0] == xd.coeff(i as usize)
        && parts[1] == yd.coeff(i as usize)
        && parts[2].is_zero()
}

/// The generating-series identity for the restricted `lambda_i`: numerator
/// over the product of the four quadratic factors, together with the
/// divisibility of the numerator by `lambda_3|_{B'=0}`.
pub fn lambda_series_identity(order: usize) -> bool {
    let a = ambient::a();
    let b = ambient::b();
    let ap = ambient::ap();
    // linear forms and signs of (A+B+A')^i - (A+A')^i - (A+B)^i + A^i
    let forms: [(APoly, i64); 4] = [
        (a.add(&b).add(&ap), 1),
        (a.add(&ap), -1),
        (a.add(&b), -1),
        (a.clone(), 1),
    ];
    // lhs: sum over odd i >= 3 of (lambda_i)|_{B'=0} t^i times the product
    // of (1 - (Lt)^2); rhs: numerator = sum of ±(Lt)^3 ∏_{other}(1-(L't)^2).
    let mut num = Series1::<APoly>::zero(order);
    for (k, (f, sign)) in forms.iter().enumerate() {
        let mut term = Series1::from_coeffs(order, [(3usize, f.pow(3).scale(&rat_i(*sign)))]);
        for (l, (g, _)) in forms.iter().enumerate() {
            if l != k {
                let factor =
                    Series1::from_coeffs(order, [(0usize, APoly::one()), (2, g.pow(2).neg())]);
                term = term.mul(&factor);
            }
        }
        num = num.add(&term);
    }
    let mut denom = Series1::from_coeffs(order, [(0usize, APoly::one())]);
    for (g, _) in &forms {
        let factor = Series1::from_coeffs(order, [(0usize, APoly::one()), (2, g.pow(2).neg())]);
        denom = denom.mul(&factor);
    }
    let mut lhs = Series1::<APoly>::zero(order);
    let mut i = 3;
    while i <= order {
        lhs = lhs.add(&Series1::from_coeffs(
            order,
            [(i, lambda_k(i as u32).set_var_zero(ambient::BP))],
        ));
        i += 2;
    }
    if lhs.mul(&denom) != num {
        return false;
    }
    // numerator coefficients divisible by lambda_3|_{B'=0}
    let l3 = lambda_k(3).set_var_zero(ambient::BP);
    (0..=order).all(|k| {
        let c = num.coeff(k);
        c.is_zero() || c.exact_div(&l3).is_some()
    })
}

/// Specializations pinning the change of variables:
/// `sigma~_2|_{A'=B'=0} = 4s` and `sigma~_6|_{A'=B'=0} = 6 pi + 4 s^3`.
pub fn sigma_specializations_ok(ring: &InvariantRing) -> bool {
    let at0 = |p: &APoly| p.set_var_zero(ambient::AP).set_var_zero(ambient::BP);
    let s2 = at0(&ring.sigma_tilde(2));
    let s6 = at0(&ring.sigma_tilde(6));
    s2 == s_ab().scale(&rat_i(4))
        && s6 == pi_ab().scale(&rat_i(6)).add(&s_ab().pow(3).scale(&rat_i(4)))
}

/// `sum_i P_{i5}(A,B,0,0) t^i = (3/5) (Y/D)(s(A,B), pi(A,B), t)`, checked
/// to the given order against the deterministic decompositions.
pub fn p5_series_identity(ring: &InvariantRing, order: usize) -> bool {
    let (_, yd) = series_xd_yd(order);
    let mut i = 3;
    while i <= order {
        let (_, p5) = ring.decompose_in_i35(i as u32);
        let got = p5.set_var_zero(ambient::AP).set_var_zero(ambient::BP);
        let expect = spp_to_ab(&yd.coeff(i).scale(&rat(3, 5)));
        if got != expect {
            return false;
        }
        i += 2;
    }
    true
}

// ---------------------------------------------------------------------------
// the coefficient polynomials P_{ij}(x2, x6) and the xi series
// ---------------------------------------------------------------------------

/// Substitution `s -> x2/4`, `pi -> x6/6 - x2^3/96` into a `Q[s,pi]`
/// polynomial.
pub fn sp_to_x26(f: &SpPoly) -> XPoly {
    assert!(!f.uses_var(PVAR), "residual p after module decomposition");
    let x2 = XPoly::var(0);
    let x6 = XPoly::var(1);
    f.subst(&[
        x2.scale(&rat(1, 4)),
        x6.scale(&rat(1, 6)).sub(&x2.pow(3).scale(&rat(1, 96))),
        XPoly::zero(),
    ])
}

/// `X/D` and `Y/D` with coefficients rewritten in `Q[x2, x6]`.
pub fn series_xd_yd_x26(order: usize) -> (Series1<XPoly>, Series1<XPoly>) {
    let (xd, yd) = series_xd_yd(order);
    let conv = |s: &Series1<SpPoly>| {
        Series1::from_coeffs(order, (0..=order).map(|k| (k, sp_to_x26(&s.coeff(k)))))
    };
    (conv(&xd), conv(&yd))
}

/// The bracket coefficient polynomial `P_{ij}(x2, x6)`: the `t^i u^j`
/// coefficient of `(3/10)((X/D)(t)(Y/D)(u) - (Y/D)(t)(X/D)(u))`.
pub fn p_bold(i: u32, j: u32) -> XPoly {
    assert!(i % 2 == 1 && j % 2 == 1 && i >= 3 && j >= 3);
    let order = (i + j) as usize;
    let (xd, yd) = series_xd_yd_x26(order);
    xd.coeff(i as usize)
        .mul(&yd.coeff(j as usize))
        .sub(&yd.coeff(i as usize).mul(&xd.coeff(j as usize)))
        .scale(&rat(3, 10))
}

/// The auxiliary identity relating `P_{ij}` evaluated at the restricted
/// invariants to the lambda ratios:
/// `P_ij(4s, 6pi + 4s^3) = -(1/2)((P_{i5}|_0)·ratio_j - (P_{j5}|_0)·ratio_i)`.
pub fn aux_identity_ok(ring: &InvariantRing, i: u32, j: u32) -> bool {
    let pij = p_bold(i, j);
    // substitute x2 -> 4s(A,B), x6 -> 6pi + 4s^3
    let lhs = pij.subst(&[
        s_ab().scale(&rat_i(4)),
        pi_ab().scale(&rat_i(6)).add(&s_ab().pow(3).scale(&rat_i(4))),
    ]);
    let at0 = |p: &APoly| p.set_var_zero(ambient::AP).set_var_zero(ambient::BP);
    let (_, pi5) = ring.decompose_in_i35(i);
    let (_, pj5) = ring.decompose_in_i35(j);
    let rhs = at0(&pi5)
        .mul(&sym_lambda_ratio(j))
        .sub(&at0(&pj5).mul(&sym_lambda_ratio(i)))
        .scale(&rat(-1, 2));
    lhs == rhs
}

/// `d(x2, x6, t) = (1 - x2 t^2 / 4)^2 + (-x6/6 + x2^3/96) t^6`.
pub fn series_small_d(order: usize) -> Series1<XPoly> {
    let x2 = XPoly::var(0);
    let x6 = XPoly::var(1);
    let lin = Series1::from_coeffs(
        order,
        [(0usize, XPoly::one()), (2, x2.scale(&rat(-1, 4)))],
    );
    let corr = Series1::from_coeffs(
        order,
        [(
            6usize,
            x6.scale(&rat(-1, 6)).add(&x2.pow(3).scale(&rat(1, 96))),
        )],
    );
    lin.mul(&lin).add(&corr)
}

/// Sign convention for the `xi` series.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum XiSign {
    Plus,
    Minus,
}

impl std::fmt::Display for XiSign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            XiSign::Plus => write!(f, "plus"),
            XiSign::Minus => write!(f, "minus"),
        }
    }
}

/// `xi_3 = t d/dt (± t^3/3 / d)` and `xi_5 = t d/dt (± t^5/5 / d)`.
pub fn series_xi(sign: XiSign, order: usize) -> (Series1<XPoly>, Series1<XPoly>) {
    let dinv = series_small_d(order)
        .invert()
        .expect("d has constant term 1");
    let s = match sign {
        XiSign::Plus => rat(1, 1),
        XiSign::Minus => rat(-1, 1),
    };
    let t3 = Series1::from_coeffs(order, [(3usize, XPoly::constant(&s * rat(1, 3)))]);
    let t5 = Series1::from_coeffs(order, [(5usize, XPoly::constant(&s * rat(1, 5)))]);
    (
        t3.mul(&dinv).t_log_derivative(),
        t5.mul(&dinv).t_log_derivative(),
    )
}

/// The relations tying `xi` to `X/D`, `Y/D` (minus convention):
/// `xi_3^- = -(1/2)(X/D + s(x)·Y/D)` and `xi_5^- = -(3/5)(Y/D)`.
pub fn xi_relations_ok(order: usize) -> bool {
    let (xi3, xi5) = series_xi(XiSign::Minus, order);
    let (xd, yd) = series_xd_yd_x26(order);
    let sx = XPoly::var(0).scale(&rat(1, 4)); // s(x2,x6) = x2/4
    for k in 0..=order {
        let want3 = xd
            .coeff(k)
            .add(&sx.mul(&yd.coeff(k)))
            .scale(&rat(-1, 2));
        if xi3.coeff(k) != want3 {
            return false;
        }
        let want5 = yd.coeff(k).scale(&rat(-3, 5));
        if xi5.coeff(k) != want5 {
            return false;
        }
    }
    true
}

// ---------------------------------------------------------------------------
// the degree-9 product D(t) and its congruences
// ---------------------------------------------------------------------------

/// `D(t) = prod over the nine forms of (1 + t X)`, a degree-9 polynomial in
/// `t` with ambient coefficients.
pub fn series_big_d(order: usize) -> Series1<APoly> {
    let mut prod = Series1::from_coeffs(order, [(0usize, APoly::one())]);
    for f in crate::invariants::nine_forms() {
        let factor = Series1::from_coeffs(order, [(0usize, APoly::one()), (1, f)]);
        prod = prod.mul(&factor);
    }
    prod
}

/// Even and odd parts of `D(t)`.
pub fn big_d_even_odd(order: usize) -> (Series1<APoly>, Series1<APoly>) {
    let d = series_big_d(order);
    let ev = Series1::from_coeffs(
        order,
        (0..=order).filter(|k| k % 2 == 0).map(|k| (k, d.coeff(k))),
    );
    let odd = Series1::from_coeffs(
        order,
        (0..=order).filter(|k| k % 2 == 1).map(|k| (k, d.coeff(k))),
    );
    (ev, odd)
}

/// `D_ev^0(t) = (1 - sigma~_2 t^2/4)^2 + (-sigma~_6/6 + sigma~_2^3/96) t^6`.
pub fn big_d_even_model(ring: &InvariantRing, order: usize) -> Series1<APoly> {
    let s2 = ring.sigma_tilde(2);
    let s6 = ring.sigma_tilde(6);
    let lin = Series1::from_coeffs(
        order,
        [(0usize, APoly::one()), (2, s2.scale(&rat(-1, 4)))],
    );
    let corr = Series1::from_coeffs(
        order,
        [(
            6usize,
            s6.scale(&rat(-1, 6)).add(&s2.pow(3).scale(&rat(1, 96))),
        )],
    );
    lin.mul(&lin).add(&corr)
}

/// `D_odd^0(t) = sigma~_3 t^3 / 3 + (sigma~_5/5 - sigma~_2 sigma~_3/6) t^5`.
pub fn big_d_odd_model(ring: &InvariantRing, order: usize) -> Series1<APoly> {
    let s2 = ring.sigma_tilde(2);
    let s3 = ring.sigma_tilde(3);
    let s5 = ring.sigma_tilde(5);
    Series1::from_coeffs(
        order,
        [
            (3usize, s3.scale(&rat(1, 3))),
            (
                5,
                s5.scale(&rat(1, 5)).sub(&s2.mul(&s3).scale(&rat(1, 6))),
            ),
        ],
    )
}
