//! The elementary polynomial maps: `delta`, `lambda`, the cocycle, the
//! antisymmetric elements `tau_{ij}`, and the evaluation maps used to
//! project graded classes onto polynomial models.

use crate::exactpoly::poly::{ambient, Ambient, Poly};
use crate::exactpoly::rat::{rat, rat_i, Rat};
use crate::invariants::{sigma_small, InvariantRing};
use num_traits::One;
use thiserror::Error;

pub type APoly = Poly<Ambient>;

#[derive(Debug, Error)]
pub enum MapError {
    #[error("input is not in AB·Q[A,B]")]
    NotInV,
    #[error("exact division failed where divisibility is guaranteed: {0}")]
    DivisionFailed(&'static str),
}

/// True if `v` lies in `AB·Q[A,B]`: no primed variables, divisible by `AB`.
pub fn in_v_space(v: &APoly) -> bool {
    v.terms()
        .all(|(m, _)| m.e[2] == 0 && m.e[3] == 0 && m.e[0] >= 1 && m.e[1] >= 1)
}

/// `delta_v = v(A+A', B+B') - v(A,B) - v(A',B')`, a symmetric polynomial.
pub fn delta(v: &APoly) -> Result<APoly, MapError> {
    if !in_v_space(v) {
        return Err(MapError::NotInV);
    }
    let a = ambient::a();
    let b = ambient::b();
    let ap = ambient::ap();
    let bp = ambient::bp();
    let sum = v.subst(&[a.add(&ap), b.add(&bp), ap.clone(), bp.clone()]);
    let primed = v.subst(&[ap.clone(), bp.clone(), ap, bp]);
    Ok(sum.sub(v).sub(&primed))
}

/// `lambda_v`, the half-sum of six substitutions of `v`.
pub fn lambda_v(v: &APoly) -> Result<APoly, MapError> {
    if !in_v_space(v) {
        return Err(MapError::NotInV);
    }
    let a = ambient::a();
    let b = ambient::b();
    let ap = ambient::ap();
    let bp = ambient::bp();
    let s = |x: &APoly, y: &APoly| v.subst(&[x.clone(), y.clone(), ap.clone(), bp.clone()]);
    let sum = s(&a.add(&ap), &b)
        .neg()
        .add(&s(&a.add(&ap), &bp))
        .add(&s(&a, &b.add(&bp)))
        .sub(&s(&ap, &b.add(&bp)))
        .sub(&s(&a, &bp))
        .add(&s(&ap, &b));
    Ok(sum.scale(&rat(1, 2)))
}

/// `lambda_k = (A+B+A')^k - (A+A'+B')^k - (A+B+B')^k + (B+A'+B')^k
///  + (A+B')^k - (A'+B)^k`, for odd `k >= 3`.
pub fn lambda_k(k: u32) -> APoly {
    let a = ambient::a();
    let b = ambient::b();
    let ap = ambient::ap();
    let bp = ambient::bp();
    a.add(&b)
        .add(&ap)
        .pow(k)
        .sub(&a.add(&ap).add(&bp).pow(k))
        .sub(&a.add(&b).add(&bp).pow(k))
        .add(&b.add(&ap).add(&bp).pow(k))
        .add(&a.add(&bp).pow(k))
        .sub(&ap.add(&b).pow(k))
}

/// The correction term `lambda^0_u`, an element of `M`, defined through two
/// exact difference quotients.
pub fn lambda0(u: &APoly) -> Result<APoly, MapError> {
    if !in_v_space(u) {
        return Err(MapError::NotInV);
    }
    let a = ambient::a();
    let b = ambient::b();
    let ap = ambient::ap();
    let bp = ambient::bp();
    // psi(A,B,B') = (u(A, B+B') - u(A,B) - u(A,B')) / A
    let num = u
        .subst(&[a.clone(), b.add(&bp), ap.clone(), bp.clone()])
        .sub(u)
        .sub(&u.subst(&[a.clone(), bp.clone(), ap.clone(), bp.clone()]));
    let psi = num
        .exact_div(&a)
        .ok_or(MapError::DivisionFailed("psi numerator by A"))?;
    // psi(A+A', B, B') - psi(A, B, B'), then scale by A/2
    let shifted = psi.subst(&[a.add(&ap), b.clone(), ap.clone(), bp.clone()]);
    let half = shifted.sub(&psi).mul(&a).scale(&rat(1, 2));
    Ok(half.sub(&ambient::swap_pairs(&half)))
}

/// The 2-cocycle `c(v, v') = delta_v · lambda_{v'} - delta_{v'} · lambda_v`.
pub fn cocycle(v: &APoly, vp: &APoly) -> Result<APoly, MapError> {
    let dv = delta(v)?;
    let dvp = delta(vp)?;
    let lv = lambda_v(v)?;
    let lvp = lambda_v(vp)?;
    Ok(dv.mul(&lvp).sub(&dvp.mul(&lv)))
}

/// `tau_{ij} = sigma~_i · lambda_j - sigma~_j · lambda_i` for odd `i, j`.
pub fn tau(ring: &InvariantRing, i: u32, j: u32) -> APoly {
    assert!(i % 2 == 1 && j % 2 == 1 && i >= 3 && j >= 3);
    let si = ring.sigma_tilde(i);
    let sj = ring.sigma_tilde(j);
    si.mul(&lambda_k(j)).sub(&sj.mul(&lambda_k(i)))
}

/// Membership in `M = ABA'B'·Q[A,B,A',B']^{as}`.
pub fn in_m(p: &APoly) -> bool {
    ambient::divisible_by_abab(p) && ambient::is_as(p)
}

/// The evaluation `M -> ABA'B'·Q[A,A']` killing `I·M`: divide by `ABA'B'`,
/// set `B = B' = 0`, multiply back.
pub fn ev_bbp0(m: &APoly) -> APoly {
    // equivalently the depth-2 homogeneous component
    m.deg2_component(2)
        .filter(|mo| mo.e[0] >= 1 && mo.e[1] >= 1 && mo.e[2] >= 1 && mo.e[3] >= 1)
}

/// The evaluation of a class in the k-th graded piece: the depth-(k+2)
/// homogeneous component of a representative.
pub fn ev_gr(m: &APoly, k: u32) -> APoly {
    m.deg2_component(k + 2)
}

/// `sigma_k(A,B)` as an element of `V` (for the cocycle on the odd span).
pub fn sigma_v(k: u32) -> APoly {
    sigma_small(k)
}

/// The depth-0 part `p(A, 0, A', 0)` of an ambient polynomial.
pub fn at_b_bp_zero(p: &APoly) -> APoly {
    p.set_var_zero(ambient::B).set_var_zero(ambient::BP)
}

/// The depth-1 homogeneous component in `(B, B')`, i.e. the linearization
/// used by the graded evaluation of Sigma-degree-1 classes.
pub fn depth1_component(p: &APoly) -> APoly {
    p.deg2_component(1)
}

/// Characterization of restrictions of doubly-antisymmetric polynomials:
/// `Pi` in `Q[A,B,A']` is such a restriction iff `Pi(0,B,A')` is symmetric
/// in `(B,A')`, `Pi(A,0,A')` antisymmetric in `(A,A')`, and `Pi(A,B,0)`
/// antisymmetric in `(A,B)`. On success the explicit fourteen-term
/// preimage is returned (and verified).
pub fn im_r_preimage(pi: &APoly) -> Option<APoly> {
    assert!(!pi.uses_var(ambient::BP), "input must live in Q[A,B,A']");
    let z = APoly::zero;
    let subst = |xa: &APoly, xb: &APoly, xap: &APoly| {
        pi.subst(&[xa.clone(), xb.clone(), xap.clone(), z()])
    };
    let a = ambient::a();
    let b = ambient::b();
    let ap = ambient::ap();
    let bp = ambient::bp();
    // (1) Pi(0,B,A') symmetric in (B,A')
    let c1 = subst(&z(), &b, &ap) == subst(&z(), &ap, &b);
    // (2) Pi(A,0,A') antisymmetric in (A,A')
    let c2 = subst(&a, &z(), &ap) == subst(&ap, &z(), &a).neg();
    // (3) Pi(A,B,0) antisymmetric in (A,B)
    let c3 = subst(&a, &b, &z()) == subst(&b, &a, &z()).neg();
    if !(c1 && c2 && c3) {
        return None;
    }
    let f = subst(&a, &b, &ap)
        .sub(&subst(&ap, &bp, &a))
        .sub(&subst(&b, &a, &bp))
        .add(&subst(&bp, &ap, &b))
        .add(&subst(&ap, &z(), &a))
        .sub(&subst(&bp, &z(), &b))
        .add(&subst(&b, &a, &z()))
        .sub(&subst(&bp, &ap, &z()))
        .sub(&subst(&z(), &ap, &b))
        .add(&subst(&z(), &bp, &a))
        .add(&subst(&z(), &z(), &b))
        .sub(&subst(&z(), &z(), &a))
        .sub(&subst(&z(), &z(), &bp))
        .add(&subst(&z(), &z(), &ap));
    // preimage must be doubly antisymmetric and restrict back to Pi
    assert!(ambient::is_asas(&f), "fourteen-term preimage not as x as");
    assert_eq!(f.set_var_zero(ambient::BP), *pi, "preimage does not restrict");
    Some(f)
}

/// `sigma~_4 - (1/4) sigma~_2^2`, which equals `-3 (AB' - A'B)^2`.
pub fn annihilator_of_tau35(ring: &InvariantRing) -> APoly {
    let s2 = ring.sigma_tilde(2);
    let s4 = ring.sigma_tilde(4);
    s4.sub(&s2.mul(&s2).scale(&rat(1, 4)))
}

pub fn annihilator_closed_form() -> APoly {
    let q = ambient::a()
        .mul(&ambient::bp())
        .sub(&ambient::ap().mul(&ambient::b()));
    q.mul(&q).scale(&rat_i(-3))
}

/// `one()` helper for tests.
pub fn one() -> Rat {
    Rat::one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::poly::ambient::{a, ap, b, bp};

    #[test]
    fn delta_of_ab() {
        let v = a().mul(&b());
        let d = delta(&v).unwrap();
        assert_eq!(d, a().mul(&bp()).add(&ap().mul(&b())));
        assert!(ambient::is_sym(&d));
        assert!(delta(&APoly::zero()).unwrap().is_zero());
    }

    #[test]
    fn delta_of_sigma_k_is_minus_sigma_tilde() {
        let ring = InvariantRing::new();
        for k in [3u32, 5, 7] {
            let d = delta(&sigma_v(k)).unwrap();
            assert_eq!(d, ring.sigma_tilde(k).neg(), "k = {}", k);
        }
    }

    #[test]
    fn delta_rejects_bad_input() {
        assert!(delta(&ap()).is_err());
        assert!(delta(&a()).is_err()); // not divisible by B
    }

    #[test]
    fn lambda_k_matches_two_lambda_sigma() {
        for k in [3u32, 5, 7, 9, 11] {
            let direct = lambda_k(k);
            let via_v = lambda_v(&sigma_v(k)).unwrap();
            assert_eq!(direct, via_v.scale(&rat_i(2)), "k = {}", k);
        }
    }

    #[test]
    fn lambda3_at_bp_zero() {
        // 3 A' B (A' + 2A + B)
        let got = lambda_k(3).set_var_zero(ambient::BP);
        let expect = ap()
            .mul(&b())
            .mul(&ap().add(&a().scale(&rat_i(2))).add(&b()))
            .scale(&rat_i(3));
        assert_eq!(got, expect);
    }

    #[test]
    fn lambda_restriction_is_half_delta() {
        // (lambda_v)|_{B'=0} = -(1/2) (delta_v)|_{B'=0}
        for v in [
            a().mul(&b()),
            a().pow(2).mul(&b()),
            a().mul(&b().pow(3)),
            sigma_v(5),
        ] {
            let l = lambda_v(&v).unwrap().set_var_zero(ambient::BP);
            let d = delta(&v).unwrap().set_var_zero(ambient::BP);
            assert_eq!(l, d.scale(&rat(-1, 2)));
        }
    }

    #[test]
    fn lambda0_of_ab_is_zero_and_values_in_m() {
        assert!(lambda0(&a().mul(&b())).unwrap().is_zero());
        for u in [
            a().pow(2).mul(&b()),
            a().mul(&b().pow(2)),
            a().pow(3).mul(&b().pow(2)),
        ] {
            let l = lambda0(&u).unwrap();
            assert!(l.is_zero() || in_m(&l));
        }
    }

    #[test]
    fn cocycle_values_in_m() {
        let pairs = [
            (a().mul(&b()), a().pow(2).mul(&b())),
            (a().pow(2).mul(&b()), a().mul(&b().pow(2))),
            (sigma_v(3), sigma_v(5)),
        ];
        for (v, vp) in pairs {
            let c = cocycle(&v, &vp).unwrap();
            assert!(c.is_zero() || in_m(&c));
            // the four specializations vanish
            for var in 0..4 {
                assert!(c.set_var_zero(var).is_zero());
            }
            // antisymmetry in the arguments
            assert_eq!(cocycle(&vp, &v).unwrap(), c.neg());
        }
        assert!(cocycle(&sigma_v(3), &sigma_v(3)).unwrap().is_zero());
    }

    #[test]
    fn cocycle_on_odd_span_is_minus_half_tau() {
        // with lambda_k = 2 lambda_{sigma_k} and delta_{sigma_k} = -sigma~_k,
        // the cocycle on the odd power sums is -(1/2) tau_{ij}
        let ring = InvariantRing::new();
        for (i, j) in [(3u32, 5u32), (3, 7)] {
            let c = cocycle(&sigma_v(i), &sigma_v(j)).unwrap();
            let t = tau(&ring, i, j);
            assert_eq!(c, t.scale(&rat(-1, 2)), "(i,j) = ({},{})", i, j);
        }
    }

    #[test]
    fn cocycle_cyclic_identity() {
        // delta_u c(v,w) + delta_v c(w,u) + delta_w c(u,v) = 0
        let triples = [
            (a().mul(&b()), a().pow(2).mul(&b()), a().mul(&b().pow(2))),
            (sigma_v(3), a().mul(&b()), a().pow(2).mul(&b().pow(2))),
        ];
        for (u, v, w) in triples {
            let s = delta(&u)
                .unwrap()
                .mul(&cocycle(&v, &w).unwrap())
                .add(&delta(&v).unwrap().mul(&cocycle(&w, &u).unwrap()))
                .add(&delta(&w).unwrap().mul(&cocycle(&u, &v).unwrap()));
            assert!(s.is_zero());
        }
    }

    #[test]
    fn tau_antisymmetric_and_doubly_antisymmetric() {
        let ring = InvariantRing::new();
        assert!(tau(&ring, 3, 3).is_zero());
        let t35 = tau(&ring, 3, 5);
        assert_eq!(tau(&ring, 5, 3), t35.neg());
        assert!(in_m(&t35));
        assert!(ambient::is_asas(&t35));
        assert!(ambient::is_asas(&tau(&ring, 3, 7)));
    }

    #[test]
    fn tau35_evaluation() {
        // 30 A A' B B' (A^2 - A'^2)(2A^2 + 5AA' + 2A'^2)
        let ring = InvariantRing::new();
        let got = ev_bbp0(&tau(&ring, 3, 5));
        let aabb = a().mul(&b()).mul(&ap()).mul(&bp());
        let expect = aabb
            .mul(&a().pow(2).sub(&ap().pow(2)))
            .mul(
                &a().pow(2)
                    .scale(&rat_i(2))
                    .add(&a().mul(&ap()).scale(&rat_i(5)))
                    .add(&ap().pow(2).scale(&rat_i(2))),
            )
            .scale(&rat_i(30));
        assert_eq!(got, expect);
    }

    #[test]
    fn ev_is_module_map() {
        let ring = InvariantRing::new();
        let t35 = tau(&ring, 3, 5);
        let s2 = ring.sigma_tilde(2);
        let lhs = ev_bbp0(&s2.mul(&t35));
        let rhs = at_b_bp_zero(&s2).mul(&ev_bbp0(&t35));
        assert_eq!(lhs, rhs);
        // anything in I·M dies
        let s3 = ring.sigma_tilde(3);
        assert!(ev_bbp0(&s3.mul(&t35)).is_zero());
    }

    #[test]
    fn im_r_characterization() {
        assert!(im_r_preimage(&APoly::zero()).is_some());
        // tau35 restricted to B' = 0 is zero, hence trivially in the image
        let ring = InvariantRing::new();
        let z = tau(&ring, 3, 5).set_var_zero(ambient::BP);
        assert!(z.is_zero());
        assert!(im_r_preimage(&z).is_some());
        // a bare variable fails the antisymmetry condition (2)
        assert!(im_r_preimage(&a()).is_none());
        // a genuine nonzero restriction round-trips
        let f = ambient::asas_project(
            &a().pow(2).mul(&b()).mul(&ap()).sub(&b().pow(2).mul(&bp()).mul(&a())),
        );
        if !f.is_zero() {
            let pi = f.set_var_zero(ambient::BP);
            let back = im_r_preimage(&pi).expect("restriction must satisfy the conditions");
            assert_eq!(back.set_var_zero(ambient::BP), pi);
        }
    }

    #[test]
    fn annihilator_identity() {
        let ring = InvariantRing::new();
        assert_eq!(annihilator_of_tau35(&ring), annihilator_closed_form());
    }

    mod random {
        use super::*;
        use crate::exactpoly::poly::Mono;
        use crate::exactpoly::rat::rat_i;
        use proptest::prelude::*;

        fn v_elt() -> impl Strategy<Value = APoly> {
            prop::collection::vec(((1u16..4, 1u16..4), -3i64..4), 1..4).prop_map(|ts| {
                let mut p = APoly::zero();
                for ((a, b), c) in ts {
                    p.add_term(Mono::new([a, b, 0, 0]), rat_i(c));
                }
                p
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(24))]

            #[test]
            fn random_cocycle_cyclic_identity(u in v_elt(), v in v_elt(), w in v_elt()) {
                let s = delta(&u)
                    .unwrap()
                    .mul(&cocycle(&v, &w).unwrap())
                    .add(&delta(&v).unwrap().mul(&cocycle(&w, &u).unwrap()))
                    .add(&delta(&w).unwrap().mul(&cocycle(&u, &v).unwrap()));
                prop_assert!(s.is_zero());
            }

            #[test]
            fn random_cocycle_lands_in_m(u in v_elt(), v in v_elt()) {
                let c = cocycle(&u, &v).unwrap();
                prop_assert!(c.is_zero() || in_m(&c));
                for var in 0..4usize {
                    prop_assert!(c.set_var_zero(var).is_zero());
                }
            }

            #[test]
            fn random_lambda0_lands_in_m(u in v_elt()) {
                let l = lambda0(&u).unwrap();
                prop_assert!(l.is_zero() || in_m(&l));
            }
        }
    }
}
