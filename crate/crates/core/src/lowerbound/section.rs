//! The section of the two-step quotient and the cocycle comparison: the
//! bracket of section values, computed in the free Lie algebra, agrees
//! with the polynomial cocycle.

use super::maps::{cocycle, delta, lambda0, lambda_v, APoly};
use crate::exactpoly::poly::{ambient, Poly};
use crate::freelie::{eliminate, LieElt, Tensor};
use crate::report::CheckReport;

/// `s_0`: sends `A^{a+1} B^{b+1}` to the generator `g_{ab}`.
pub fn section0(v: &APoly) -> LieElt {
    let mut out = LieElt::zero();
    for (m, c) in v.terms() {
        assert!(
            m.e[0] >= 1 && m.e[1] >= 1 && m.e[2] == 0 && m.e[3] == 0,
            "section input must lie in AB·Q[A,B]"
        );
        out = out.add(&LieElt::generator(m.e[0] as u32 - 1, m.e[1] as u32 - 1).scale(c));
    }
    out
}

/// Lift an element of `M = ABA'B'·Q[...]^{as}` into the degree-2 part of
/// the eliminated algebra: `A^a B^b A'^c B'^d - (swap)` lifts to
/// `[g_{a-1,b-1}, g_{c-1,d-1}]`.
pub fn lift_m(m: &APoly) -> LieElt {
    let mut out = LieElt::zero();
    for (mo, c) in m.terms() {
        let (a, b, cc, d) = (mo.e[0], mo.e[1], mo.e[2], mo.e[3]);
        assert!(a >= 1 && b >= 1 && cc >= 1 && d >= 1, "not in M");
        // take each antisymmetric pair once, from its (a,b) < (c,d) side
        if (a, b) < (cc, d) {
            let left = LieElt::generator(a as u32 - 1, b as u32 - 1);
            let right = LieElt::generator(cc as u32 - 1, d as u32 - 1);
            out = out.add(&left.bracket(&right).scale(c));
        }
    }
    out
}

/// Project the degree-2 part of an eliminated element back to `M`:
/// `[g_{ab}, g_{cd}]`-tensors become
/// `A^{a+1}B^{b+1}A'^{c+1}B'^{d+1} - (swap)`.
pub fn tensor_to_m(t: &Tensor) -> APoly {
    let mut out = APoly::zero();
    for (w, c) in &t.terms {
        assert_eq!(w.0.len(), 2, "tensor degree must be 2");
        let ((a, b), (cc, d)) = (w.0[0], w.0[1]);
        out.add_term(
            crate::exactpoly::poly::Mono::new([a, b, cc, d]),
            c.clone(),
        );
    }
    out
}

/// The degree-2 class of an element of the commutator subalgebra, as an
/// element of `M`. Errors if the degree-1 class is nonzero.
pub fn class_in_m(f: &LieElt) -> Result<APoly, crate::freelie::FreeLieError> {
    let e = eliminate(f)?;
    let mut t = Tensor::zero();
    for (w, c) in &e.terms {
        match w.glen() {
            1 => return Err(crate::freelie::FreeLieError::NotInFiltration(1)),
            2 => t.add_assign(&crate::freelie::g_word_tensor(w).scale(c)),
            _ => {} // filtration level >= 2 dies in the quotient
        }
    }
    Ok(tensor_to_m(&t))
}

/// The full section `s(u) = s_0(u) + lift(lambda^0_u)`.
pub fn section(u: &APoly) -> LieElt {
    let l0 = lambda0(u).expect("section input must lie in AB·Q[A,B]");
    section0(u).add(&lift_m(&l0))
}

/// `Phi(u, v) = <s(u), s(v)>` reduced to `M`.
pub fn phi_bracket(u: &APoly, v: &APoly) -> APoly {
    class_in_m(&section(u).ihara(&section(v))).expect("bracket lands in filtration level 1")
}

/// `Phi(u) = <s_0(AB), s_0(u)>` reduced to `M` (the one-variable version
/// used by the recurrences).
pub fn phi_one(u: &APoly) -> APoly {
    let ab = ambient::a().mul(&ambient::b());
    class_in_m(&section0(&ab).ihara(&section0(u))).expect("bracket lands in filtration level 1")
}

/// `Psi(u) = delta_AB (lambda_u + lambda^0_u) - delta_u lambda_AB`.
pub fn psi_one(u: &APoly) -> APoly {
    let ab = ambient::a().mul(&ambient::b());
    let dab = delta(&ab).unwrap();
    let du = delta(u).unwrap();
    let lu = lambda_v(u).unwrap().add(&lambda0(u).unwrap());
    let lab = lambda_v(&ab).unwrap();
    dab.mul(&lu).sub(&du.mul(&lab))
}

/// The common recurrence step in the `A` direction:
/// `F(A·u) - (A+A')·F(u) - ABA'·u(A',B') + A'B'A·u(A,B)` must vanish.
pub fn recurrence_a_residue(f: impl Fn(&APoly) -> APoly, u: &APoly) -> APoly {
    let a = ambient::a();
    let b = ambient::b();
    let ap = ambient::ap();
    let bp = ambient::bp();
    let u_primed = u.subst(&[ap.clone(), bp.clone(), ap.clone(), bp.clone()]);
    f(&a.mul(u))
        .sub(&a.add(&ap).mul(&f(u)))
        .sub(&a.mul(&b).mul(&ap).mul(&u_primed))
        .add(&ap.mul(&bp).mul(&a).mul(u))
}

/// The recurrence step in the `B` direction (for `u` in `AB·Q[B]`):
/// `F(B·u) - (B+B')·F(u) + ABB'·u(A',B') - A'B'B·u(A,B)` must vanish.
pub fn recurrence_b_residue(f: impl Fn(&APoly) -> APoly, u: &APoly) -> APoly {
    let a = ambient::a();
    let b = ambient::b();
    let ap = ambient::ap();
    let bp = ambient::bp();
    let u_primed = u.subst(&[ap.clone(), bp.clone(), ap.clone(), bp.clone()]);
    f(&b.mul(u))
        .sub(&b.add(&bp).mul(&f(u)))
        .add(&a.mul(&b).mul(&bp).mul(&u_primed))
        .sub(&ap.mul(&bp).mul(&b).mul(u))
}

/// `section-cocycle`: `<s(u), s(v)> = c(u, v)` for all monomial generator
/// pairs of total weight `<= max_weight`, plus the recurrences for the
/// one-variable comparison maps.
pub fn verify_section_cocycle(max_weight: u32) -> CheckReport {
    let t0 = std::time::Instant::now();
    let mut rep = CheckReport::new("section-cocycle").param("max_weight", max_weight);
    let gen = |a: u16, b: u16| -> APoly {
        Poly::monomial(
            crate::exactpoly::poly::Mono::new([a, b, 0, 0]),
            crate::exactpoly::rat::rat_i(1),
        )
    };
    // recurrences for Phi and Psi
    let mut rec_ok = true;
    for (a, b) in [(1u16, 1u16), (2, 1), (1, 2), (2, 2), (3, 1)] {
        let u = gen(a, b);
        rec_ok &= recurrence_a_residue(phi_one, &u).is_zero();
        rec_ok &= recurrence_a_residue(psi_one, &u).is_zero();
    }
    for b in 1u16..=4 {
        let u = gen(1, b);
        rec_ok &= recurrence_b_residue(phi_one, &u).is_zero();
        rec_ok &= recurrence_b_residue(psi_one, &u).is_zero();
    }
    rep.check(0, None, rec_ok);
    // Phi(AB) = Psi(AB) = 0
    let ab = gen(1, 1);
    rep.check(2, None, phi_one(&ab).is_zero() && psi_one(&ab).is_zero());
    // bracket of sections vs cocycle on all generator pairs in range
    'outer: for wu in 2..=max_weight.saturating_sub(2) {
        for wv in wu..=max_weight - wu {
            for a in 1..wu {
                let b = wu - a;
                for a2 in 1..wv {
                    let b2 = wv - a2;
                    let u = gen(a as u16, b as u16);
                    let v = gen(a2 as u16, b2 as u16);
                    let lhs = phi_bracket(&u, &v);
                    let rhs = cocycle(&u, &v).unwrap();
                    if lhs != rhs {
                        rep.fail_with(serde_json::json!({
                            "u": format!("A^{} B^{}", a, b),
                            "v": format!("A^{} B^{}", a2, b2),
                            "bracket": format!("{}", lhs),
                            "cocycle": format!("{}", rhs),
                        }));
                        break 'outer;
                    }
                }
            }
            rep.row(wu + wv, None, 1, Some(1));
        }
    }
    let mut rep = rep.finalize();
    rep.elapsed_ms = t0.elapsed().as_millis();
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::poly::ambient::{a, b};
    use crate::exactpoly::rat::rat_i;
    use crate::lowerbound::maps::in_m;

    fn abm() -> APoly {
        a().mul(&b())
    }

    #[test]
    fn section0_of_ab_is_bracket_xy() {
        let s = section0(&abm());
        assert_eq!(s, LieElt::generator(0, 0));
    }

    #[test]
    fn lift_round_trip() {
        // lift of an M element has degree-2 class equal to itself
        let ring = crate::invariants::InvariantRing::new();
        let t35 = crate::lowerbound::maps::tau(&ring, 3, 5);
        let lifted = lift_m(&t35);
        let back = class_in_m(&lifted).unwrap();
        assert_eq!(back, t35);
    }

    #[test]
    fn phi_equals_psi_one_variable() {
        for (aa, bb) in [(1u16, 1u16), (2, 1), (1, 2), (2, 2)] {
            let u = APoly::monomial(crate::exactpoly::poly::Mono::new([aa, bb, 0, 0]), rat_i(1));
            assert_eq!(phi_one(&u), psi_one(&u), "u = A^{} B^{}", aa, bb);
        }
    }

    #[test]
    fn phi_ab_vanishes() {
        assert!(phi_one(&abm()).is_zero());
        assert!(psi_one(&abm()).is_zero());
    }

    #[test]
    fn bracket_matches_cocycle_small_pairs() {
        let pairs = [
            ((1u16, 1u16), (1u16, 2u16)),
            ((2, 1), (1, 2)),
            ((1, 1), (2, 2)),
        ];
        for ((a1, b1), (a2, b2)) in pairs {
            let u = APoly::monomial(crate::exactpoly::poly::Mono::new([a1, b1, 0, 0]), rat_i(1));
            let v = APoly::monomial(crate::exactpoly::poly::Mono::new([a2, b2, 0, 0]), rat_i(1));
            let lhs = phi_bracket(&u, &v);
            let rhs = cocycle(&u, &v).unwrap();
            assert_eq!(lhs, rhs);
            assert!(lhs.is_zero() || in_m(&lhs));
        }
    }

    #[test]
    fn check_runs_clean() {
        let rep = verify_section_cocycle(7);
        assert!(rep.passed(), "{}", rep.render_text());
    }
}
