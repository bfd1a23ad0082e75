//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Every polynomial lives over a fixed, typed variable set ([`VarSet`]):
//! the ambient ring `Q[A,B,A',B']`, the rings `Q[s,pi,p]`, `Q[x2,x6]`,
//! `Q[x2,x3,x5,x6]` and the one-variable ring for period polynomials.
//! Distinct variable universes are distinct Rust types, so they can never
//! be mixed silently; crossing between them goes through [`Poly::subst`].
//!
//! Terms are kept in a canonical graded-lexicographic order: lower weight
//! first, ties broken so that later variables dominate (`A < B < A' < B'`
//! in the ambient ring).

use super::rat::{fmt_rat, Rat};
use num_traits::{One, Zero};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;
use std::marker::PhantomData;

/// Hard cap on the number of variables of any universe.
pub const MAX_VARS: usize = 4;

/// A fixed, ordered, weighted variable set.
pub trait VarSet:
    Copy + Clone + Eq + Ord + Hash + fmt::Debug + Default + Send + Sync + 'static
{
    /// Number of live variables (`<= MAX_VARS`).
    const N: usize;
    /// Display names, padded with `""` past `N`.
    const NAMES: [&'static str; MAX_VARS];
    /// Weight of each variable (total degree contribution).
    const WEIGHTS: [u32; MAX_VARS];
    /// Secondary degree of each variable: the depth degree in the ambient
    /// ring (`B`, `B'` count 1), the Sigma-degree for `x3`, `x5`.
    const DEG2: [u32; MAX_VARS];
}

macro_rules! varset {
    ($(#[$doc:meta])* $name:ident, $n:expr, $names:expr, $weights:expr, $deg2:expr) => {
        $(#[$doc])*
        #[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
        pub struct $name;
        impl VarSet for $name {
            const N: usize = $n;
            const NAMES: [&'static str; MAX_VARS] = $names;
            const WEIGHTS: [u32; MAX_VARS] = $weights;
            const DEG2: [u32; MAX_VARS] = $deg2;
        }
    };
}

varset!(
    /// The ambient ring `Q[A, B, A', B']`; `A'` prints as `Ap`, `B'` as `Bp`.
    Ambient,
    4,
    ["A", "B", "Ap", "Bp"],
    [1, 1, 1, 1],
    [0, 1, 0, 1]
);
varset!(
    /// `Q[s, pi, p]` with `s = A^2+AB+B^2`, `p = AB`, `pi = p^2 s + p^3`.
    SigmaPiP,
    3,
    ["s", "pi", "p", ""],
    [2, 6, 2, 0],
    [0, 0, 0, 0]
);
varset!(
    /// `Q[x2, x6]`, weights 2 and 6.
    X26,
    2,
    ["x2", "x6", "", ""],
    [2, 6, 0, 0],
    [0, 0, 0, 0]
);
varset!(
    /// `Q[x2, x3, x5, x6]`; `x3`, `x5` carry Sigma-degree 1.
    X2356,
    4,
    ["x2", "x3", "x5", "x6"],
    [2, 3, 5, 6],
    [0, 1, 1, 0]
);
varset!(
    /// One variable `X` for period polynomials.
    PeriodVar,
    1,
    ["X", "", "", ""],
    [1, 0, 0, 0],
    [0, 0, 0, 0]
);

/// Exponent vector for a single monomial of the universe `V`.
#[derive(Copy, Clone, PartialEq, Eq, Hash)]
pub struct Mono<V: VarSet> {
    pub e: [u16; MAX_VARS],
    _v: PhantomData<V>,
}

impl<V: VarSet> Mono<V> {
    pub fn new(e: [u16; MAX_VARS]) -> Self {
        debug_assert!(e.iter().skip(V::N).all(|&x| x == 0));
        Mono { e, _v: PhantomData }
    }

    pub fn one() -> Self {
        Mono::new([0; MAX_VARS])
    }

    pub fn var(i: usize) -> Self {
        Self::var_pow(i, 1)
    }

    pub fn var_pow(i: usize, k: u16) -> Self {
        assert!(i < V::N, "variable index out of range");
        let mut e = [0; MAX_VARS];
        e[i] = k;
        Mono::new(e)
    }

    pub fn weight(&self) -> u32 {
        (0..V::N).map(|i| V::WEIGHTS[i] * self.e[i] as u32).sum()
    }

    pub fn deg2(&self) -> u32 {
        (0..V::N).map(|i| V::DEG2[i] * self.e[i] as u32).sum()
    }

    pub fn total_degree(&self) -> u32 {
        (0..V::N).map(|i| self.e[i] as u32).sum()
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut e = self.e;
        for i in 0..V::N {
            e[i] += o.e[i];
        }
        Mono::new(e)
    }

    pub fn divides(&self, o: &Self) -> bool {
        (0..V::N).all(|i| self.e[i] <= o.e[i])
    }

    /// `o / self`; caller must ensure divisibility.
    pub fn quotient_into(&self, o: &Self) -> Self {
        debug_assert!(self.divides(o));
        let mut e = o.e;
        for i in 0..V::N {
            e[i] -= self.e[i];
        }
        Mono::new(e)
    }
}

impl<V: VarSet> Ord for Mono<V> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| {
                // later variables dominate ties: A < B < A' < B'
                for i in (0..V::N).rev() {
                    match self.e[i].cmp(&other.e[i]) {
                        std::cmp::Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                std::cmp::Ordering::Equal
            })
    }
}

impl<V: VarSet> PartialOrd for Mono<V> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl<V: VarSet> fmt::Debug for Mono<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.total_degree() == 0 {
            return write!(f, "1");
        }
        let mut first = true;
        for i in 0..V::N {
            if self.e[i] > 0 {
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                write!(f, "{}", V::NAMES[i])?;
                if self.e[i] > 1 {
                    write!(f, "^{}", self.e[i])?;
                }
            }
        }
        Ok(())
    }
}

/// A sparse polynomial: a canonical map from monomials to nonzero rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly<V: VarSet> {
    terms: BTreeMap<Mono<V>, Rat>,
}

impl<V: VarSet> Default for Poly<V> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<V: VarSet> Poly<V> {
    pub fn zero() -> Self {
        Poly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert(Mono::one(), c);
        }
        p
    }

    pub fn var(i: usize) -> Self {
        Self::monomial(Mono::var(i), Rat::one())
    }

    pub fn var_pow(i: usize, k: u16) -> Self {
        Self::monomial(Mono::var_pow(i, k), Rat::one())
    }

    pub fn monomial(m: Mono<V>, c: Rat) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono<V>, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Mono<V>) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    /// Coefficient of the constant monomial.
    pub fn constant_term(&self) -> Rat {
        self.coeff(&Mono::one())
    }

    pub fn add_term(&mut self, m: Mono<V>, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let v = e.get() + &c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, -c.clone());
        }
        r
    }

    pub fn neg(&self) -> Self {
        let mut r = self.clone();
        for c in r.terms.values_mut() {
            *c = -c.clone();
        }
        r
    }

    pub fn scale(&self, s: &Rat) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        let mut r = self.clone();
        for c in r.terms.values_mut() {
            *c = &*c * s;
        }
        r
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Self::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                r.add_term(m1.mul(m2), c1 * c2);
            }
        }
        r
    }

    pub fn mul_mono(&self, m: &Mono<V>, c: &Rat) -> Self {
        let mut r = Self::zero();
        for (m1, c1) in &self.terms {
            r.add_term(m1.mul(m), c1 * c);
        }
        r
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut r = Self::one();
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    /// Largest monomial in the canonical order, with its coefficient.
    pub fn leading(&self) -> Option<(&Mono<V>, &Rat)> {
        self.terms.iter().next_back()
    }

    /// Maximal weight over the support (`None` for the zero polynomial).
    pub fn weight(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.weight()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|m| m.weight());
        match it.next() {
            None => true,
            Some(w) => it.all(|x| x == w),
        }
    }

    /// The weight-`w` homogeneous component.
    pub fn weight_component(&self, w: u32) -> Self {
        self.filter(|m| m.weight() == w)
    }

    /// The component of secondary degree `d` (depth in the ambient ring).
    pub fn deg2_component(&self, d: u32) -> Self {
        self.filter(|m| m.deg2() == d)
    }

    /// Minimal secondary degree over the support.
    pub fn min_deg2(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.deg2()).min()
    }

    pub fn filter(&self, keep: impl Fn(&Mono<V>) -> bool) -> Self {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// True if variable `i` occurs in some term.
    pub fn uses_var(&self, i: usize) -> bool {
        self.terms.keys().any(|m| m.e[i] > 0)
    }

    /// Substitute `value` for variable `i` within the same universe.
    pub fn subst_var(&self, i: usize, value: &Self) -> Self {
        let max_e = self.terms.keys().map(|m| m.e[i]).max().unwrap_or(0);
        let mut pows: Vec<Self> = Vec::with_capacity(max_e as usize + 1);
        pows.push(Self::one());
        for k in 1..=max_e {
            let p = pows[(k - 1) as usize].mul(value);
            pows.push(p);
        }
        let mut r = Self::zero();
        for (m, c) in &self.terms {
            let mut rest = *m;
            let e = rest.e[i];
            rest.e[i] = 0;
            for (pm, pc) in &pows[e as usize].terms {
                r.add_term(rest.mul(pm), c * pc);
            }
        }
        r
    }

    /// Set variable `i` to zero.
    pub fn set_var_zero(&self, i: usize) -> Self {
        self.filter(|m| m.e[i] == 0)
    }

    /// Apply a permutation of the variables: variable `i` is replaced by
    /// variable `perm[i]`.
    pub fn permute_vars(&self, perm: [usize; MAX_VARS]) -> Self {
        let mut r = Self::zero();
        for (m, c) in &self.terms {
            let mut e = [0u16; MAX_VARS];
            for i in 0..V::N {
                e[perm[i]] += m.e[i];
            }
            r.add_term(Mono::new(e), c.clone());
        }
        r
    }

    /// Substitution given as a partial map: errors if some variable that
    /// actually occurs in `self` has no image. Variables without an image
    /// that do not occur are irrelevant.
    pub fn subst_map<W: VarSet>(
        &self,
        images: &std::collections::BTreeMap<usize, Poly<W>>,
    ) -> Result<Poly<W>, MissingImage> {
        let mut full: Vec<Poly<W>> = Vec::with_capacity(V::N);
        for v in 0..V::N {
            match images.get(&v) {
                Some(p) => full.push(p.clone()),
                None => {
                    if self.uses_var(v) {
                        return Err(MissingImage { var: V::NAMES[v] });
                    }
                    full.push(Poly::zero());
                }
            }
        }
        Ok(self.subst(&full))
    }

    /// Full substitution into another (or the same) universe. `images[i]`
    /// is the image of variable `i`; every variable of `V` must have one.
    pub fn subst<W: VarSet>(&self, images: &[Poly<W>]) -> Poly<W> {
        assert!(images.len() >= V::N, "missing image for a variable");
        // lazily extended power tables, one per variable
        let mut pows: Vec<Vec<Poly<W>>> = (0..V::N).map(|_| vec![Poly::one()]).collect();
        let mut r = Poly::zero();
        for (m, c) in &self.terms {
            let mut acc = Poly::constant(c.clone());
            for i in 0..V::N {
                let e = m.e[i] as usize;
                if e == 0 {
                    continue;
                }
                while pows[i].len() <= e {
                    let next = pows[i].last().unwrap().mul(&images[i]);
                    pows[i].push(next);
                }
                acc = acc.mul(&pows[i][e]);
            }
            r = r.add(&acc);
        }
        r
    }

    /// Partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut r = Self::zero();
        for (m, c) in &self.terms {
            if m.e[i] == 0 {
                continue;
            }
            let mut e = m.e;
            let k = e[i];
            e[i] -= 1;
            r.add_term(Mono::new(e), c * Rat::from_integer(k.into()));
        }
        r
    }

    /// Exact multivariate division: `Some(q)` with `self = d * q` when `d`
    /// divides exactly, `None` otherwise. Panics if `d` is zero.
    /// The quotient is verified by multiplying back.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let (dlm, dlc) = d.leading().unwrap();
        let mut rem = self.clone();
        let mut q = Self::zero();
        while let Some((lm, lc)) = rem.leading() {
            if !dlm.divides(lm) {
                return None;
            }
            let qm = dlm.quotient_into(lm);
            let qc = lc / dlc;
            q.add_term(qm, qc.clone());
            rem = rem.sub(&d.mul_mono(&qm, &qc));
        }
        // multiply-back: a division verdict is only trusted when it
        // reproduces the dividend
        assert_eq!(d.mul(&q), *self, "exact division round-trip failed");
        Some(q)
    }

    pub fn divides_exactly(&self, dividend: &Self) -> bool {
        dividend.exact_div(self).is_some()
    }

    /// Rescale to integer coefficients with content 1 and positive leading
    /// coefficient; the canonical representative of the line spanned by
    /// `self`. Zero maps to zero.
    pub fn primitive_integer_form(&self) -> Self {
        use num_integer::Integer;
        let Some((_, lead)) = self.leading() else {
            return Self::zero();
        };
        let mut den = num_bigint::BigInt::from(1);
        for c in self.terms.values() {
            den = den.lcm(c.denom());
        }
        let mut content = num_bigint::BigInt::from(0);
        for c in self.terms.values() {
            content = content.gcd(&(c.numer() * &den / c.denom()));
        }
        let mut scale = Rat::new(den, content);
        if (lead * &scale).numer() < &num_bigint::BigInt::from(0) {
            scale = -scale;
        }
        self.scale(&scale)
    }

    /// Serialize in the canonical dump format.
    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            vars: V::NAMES[..V::N].iter().map(|s| s.to_string()).collect(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TermJson {
                    e: m.e[..V::N].to_vec(),
                    c: fmt_rat(c),
                })
                .collect(),
        }
    }
}

/// A present variable had no image under a partial substitution.
#[derive(Debug, PartialEq, Eq, thiserror::Error)]
#[error("no image for variable {var}")]
pub struct MissingImage {
    pub var: &'static str,
}

/// JSON form of a polynomial: `{"vars": [...], "terms": [{"e": [...], "c": "p/q"}, ...]}`.
#[derive(Serialize)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

#[derive(Serialize)]
pub struct TermJson {
    pub e: Vec<u16>,
    pub c: String,
}

fn fmt_poly<V: VarSet>(p: &Poly<V>, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    let mut first = true;
    for (m, c) in &p.terms {
        if first {
            first = false;
            if c.is_one() && m.total_degree() > 0 {
                write!(f, "{:?}", m)?;
            } else if m.total_degree() == 0 {
                write!(f, "{}", c)?;
            } else {
                write!(f, "{}*{:?}", c, m)?;
            }
        } else {
            let (sign, abs) = if c < &Rat::zero() {
                ("-", -c.clone())
            } else {
                ("+", c.clone())
            };
            if abs.is_one() && m.total_degree() > 0 {
                write!(f, " {} {:?}", sign, m)?;
            } else if m.total_degree() == 0 {
                write!(f, " {} {}", sign, abs)?;
            } else {
                write!(f, " {} {}*{:?}", sign, abs, m)?;
            }
        }
    }
    Ok(())
}

impl<V: VarSet> fmt::Debug for Poly<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_poly(self, f)
    }
}

impl<V: VarSet> fmt::Display for Poly<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_poly(self, f)
    }
}

/// Ambient-ring helpers: variable indices and the standard involutions.
pub mod ambient {
    use super::*;

    pub const A: usize = 0;
    pub const B: usize = 1;
    pub const AP: usize = 2;
    pub const BP: usize = 3;

    pub type APoly = Poly<Ambient>;

    pub fn a() -> APoly {
        APoly::var(A)
    }
    pub fn b() -> APoly {
        APoly::var(B)
    }
    pub fn ap() -> APoly {
        APoly::var(AP)
    }
    pub fn bp() -> APoly {
        APoly::var(BP)
    }

    /// Exchange `(A, B) <-> (A', B')`.
    pub fn swap_pairs(p: &APoly) -> APoly {
        p.permute_vars([AP, BP, A, B])
    }

    /// Exchange `(A, A') <-> (B, B')`.
    pub fn swap_letters(p: &APoly) -> APoly {
        p.permute_vars([B, A, BP, AP])
    }

    /// True if `p` is antisymmetric under `(A,B) <-> (A',B')`.
    pub fn is_as(p: &APoly) -> bool {
        swap_pairs(p) == p.neg()
    }

    /// True if `p` is symmetric under `(A,B) <-> (A',B')`.
    pub fn is_sym(p: &APoly) -> bool {
        swap_pairs(p) == *p
    }

    /// True if `p` is antisymmetric under both exchanges.
    pub fn is_asas(p: &APoly) -> bool {
        is_as(p) && swap_letters(p) == p.neg()
    }

    /// Antisymmetrizer for `(A,B) <-> (A',B')`: `(p - swap(p))/2`.
    pub fn as_project(p: &APoly) -> APoly {
        p.sub(&swap_pairs(p)).scale(&crate::exactpoly::rat(1, 2))
    }

    /// Projector onto polynomials antisymmetric under both exchanges.
    pub fn asas_project(p: &APoly) -> APoly {
        let q = as_project(p);
        q.sub(&swap_letters(&q)).scale(&crate::exactpoly::rat(1, 2))
    }

    /// `A*B*A'*B'` as a monomial.
    pub fn abab_mono() -> Mono<Ambient> {
        Mono::new([1, 1, 1, 1])
    }

    /// Divisibility by `A*B*A'*B'`.
    pub fn divisible_by_abab(p: &APoly) -> bool {
        p.terms().all(|(m, _)| m.e.iter().take(4).all(|&x| x >= 1))
    }
}

#[cfg(test)]
mod tests {
    use super::ambient::*;
    use super::*;
    use crate::exactpoly::rat::{rat, rat_i};
    use proptest::prelude::*;

    fn ab() -> Poly<Ambient> {
        a().mul(&b())
    }

    #[test]
    fn difference_of_squares() {
        let p = a().add(&b());
        let q = a().sub(&b());
        let expect = a().mul(&a()).sub(&b().mul(&b()));
        assert_eq!(p.mul(&q), expect);
    }

    #[test]
    fn delta_ab_is_abp_plus_apb() {
        // AB' + A'B is the image of AB under the cocycle map delta
        let s = a().mul(&bp()).add(&ap().mul(&b()));
        assert!(is_sym(&s));
        assert_eq!(s.num_terms(), 2);
    }

    #[test]
    fn absorbing_zero() {
        let p = a().add(&b().scale(&rat(3, 7)));
        assert!(p.mul(&Poly::zero()).is_zero());
    }

    #[test]
    fn exact_division() {
        let p = a().pow(2).sub(&b().pow(2));
        let q = p.exact_div(&a().sub(&b())).unwrap();
        assert_eq!(q, a().add(&b()));
        assert!(a().exact_div(&b()).is_none());
        // divisor with several terms and a fractional leading coefficient
        let d = a().scale(&rat(2, 3)).add(&bp());
        let prod = d.mul(&p);
        assert_eq!(prod.exact_div(&d).unwrap(), p);
    }

    #[test]
    fn substitution_is_ring_hom_on_example() {
        // v(A,B) -> v(A+A', B+B') as part of the delta map
        let v = a().pow(2).mul(&b());
        let images = vec![a().add(&ap()), b().add(&bp()), ap(), bp()];
        let got = v.subst(&images);
        // independent expansion: (A+A')^2 (B+B')
        let expect = a()
            .add(&ap())
            .pow(2)
            .mul(&b().add(&bp()));
        assert_eq!(got, expect);
    }

    #[test]
    fn identity_substitution() {
        let p = ab().mul(&ap()).sub(&bp().pow(3).scale(&rat_i(5)));
        let images = vec![a(), b(), ap(), bp()];
        assert_eq!(p.subst(&images), p);
    }

    #[test]
    fn partial_substitution_errors_on_missing_image() {
        let p = a().mul(&b());
        let mut images = std::collections::BTreeMap::new();
        images.insert(0usize, ap());
        let err = p.subst_map(&images).unwrap_err();
        assert_eq!(err, MissingImage { var: "B" });
        images.insert(1, bp());
        assert_eq!(p.subst_map(&images).unwrap(), ap().mul(&bp()));
        // absent variables may lack images
        let q = a().pow(2);
        let mut only_a = std::collections::BTreeMap::new();
        only_a.insert(0usize, b());
        assert_eq!(q.subst_map(&only_a).unwrap(), b().pow(2));
    }

    #[test]
    fn canonical_order_is_graded() {
        let p = a().add(&b().pow(2)).add(&Poly::one());
        let weights: Vec<u32> = p.terms().map(|(m, _)| m.weight()).collect();
        assert_eq!(weights, vec![0, 1, 2]);
        // A < B at equal weight
        let q = b().add(&a());
        let ms: Vec<_> = q.terms().map(|(m, _)| m.e).collect();
        assert_eq!(ms, vec![[1, 0, 0, 0], [0, 1, 0, 0]]);
    }

    #[test]
    fn projectors() {
        let p = a().mul(&bp());
        let anti = as_project(&p);
        assert!(is_as(&anti));
        let both = asas_project(&a().pow(2).mul(&b()).mul(&ap()).mul(&bp()));
        assert!(is_asas(&both) || both.is_zero());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn ring_axioms(ea in prop::collection::vec((0u16..3, 0u16..3, 0u16..3, 0u16..3, -4i64..5), 0..5),
                       eb in prop::collection::vec((0u16..3, 0u16..3, 0u16..3, 0u16..3, -4i64..5), 0..5),
                       ec in prop::collection::vec((0u16..3, 0u16..3, 0u16..3, 0u16..3, -4i64..5), 0..5)) {
            let build = |ts: &[(u16, u16, u16, u16, i64)]| {
                let mut p = Poly::<Ambient>::zero();
                for &(x, y, z, w, c) in ts {
                    p.add_term(Mono::new([x, y, z, w]), rat_i(c));
                }
                p
            };
            let (p, q, r) = (build(&ea), build(&eb), build(&ec));
            prop_assert_eq!(p.mul(&q), q.mul(&p));
            prop_assert_eq!(p.mul(&q).mul(&r), p.mul(&q.mul(&r)));
            prop_assert_eq!(p.mul(&q.add(&r)), p.mul(&q).add(&p.mul(&r)));
            prop_assert_eq!(p.add(&q), q.add(&p));
        }

        #[test]
        fn exact_div_round_trip(ea in prop::collection::vec((0u16..3, 0u16..3, -4i64..5), 1..4),
                                eb in prop::collection::vec((0u16..3, 0u16..3, -4i64..5), 1..4)) {
            let build = |ts: &[(u16, u16, i64)]| {
                let mut p = Poly::<Ambient>::zero();
                for &(x, y, c) in ts {
                    p.add_term(Mono::new([x, y, 0, 0]), rat_i(c));
                }
                p
            };
            let (p, d) = (build(&ea), build(&eb));
            prop_assume!(!d.is_zero());
            let prod = p.mul(&d);
            let q = prod.exact_div(&d).unwrap();
            prop_assert_eq!(d.mul(&q), prod);
        }

        #[test]
        fn substitution_hom(ea in prop::collection::vec((0u16..3, 0u16..3, -3i64..4), 0..4),
                            eb in prop::collection::vec((0u16..3, 0u16..3, -3i64..4), 0..4)) {
            let build = |ts: &[(u16, u16, i64)]| {
                let mut p = Poly::<Ambient>::zero();
                for &(x, y, c) in ts {
                    p.add_term(Mono::new([x, y, 0, 0]), rat_i(c));
                }
                p
            };
            let (p, q) = (build(&ea), build(&eb));
            let images = vec![a().add(&ap()), b().add(&bp()), ap(), bp()];
            prop_assert_eq!(p.mul(&q).subst(&images), p.subst(&images).mul(&q.subst(&images)));
        }
    }
}
