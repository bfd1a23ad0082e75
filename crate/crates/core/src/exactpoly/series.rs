//! Truncated formal power series in one and two variables, generic over
//! an exact coefficient ring (rationals or sparse polynomials).

use super::poly::{Poly, VarSet};
use super::rat::Rat;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use thiserror::Error;

/// Minimal exact-ring interface for series coefficients.
pub trait Ring: Clone + PartialEq + Send + Sync + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale(&self, r: &Rat) -> Self;
    /// Multiplicative inverse, when the element is a unit of the ring.
    fn inv_unit(&self) -> Option<Self>;
}

impl Ring for Rat {
    fn zero() -> Self {
        <Rat as Zero>::zero()
    }
    fn one() -> Self {
        <Rat as One>::one()
    }
    fn is_zero(&self) -> bool {
        <Rat as Zero>::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
    fn scale(&self, r: &Rat) -> Self {
        self * r
    }
    fn inv_unit(&self) -> Option<Self> {
        if <Rat as Zero>::is_zero(self) {
            None
        } else {
            Some(<Rat as One>::one() / self.clone())
        }
    }
}

impl<V: VarSet> Ring for Poly<V> {
    fn zero() -> Self {
        Poly::zero()
    }
    fn one() -> Self {
        Poly::one()
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        Poly::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        Poly::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        Poly::mul(self, o)
    }
    fn neg(&self) -> Self {
        Poly::neg(self)
    }
    fn scale(&self, r: &Rat) -> Self {
        Poly::scale(self, r)
    }
    fn inv_unit(&self) -> Option<Self> {
        // units are the nonzero constants
        if self.num_terms() == 1 {
            let c = self.constant_term();
            if !<Rat as Zero>::is_zero(&c) {
                return Some(Poly::constant(<Rat as One>::one() / c));
            }
        }
        None
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum SeriesError {
    #[error("constant term is not invertible")]
    NonInvertibleConstantTerm,
}

/// Truncated series `sum_{k <= order} c_k t^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct Series1<C: Ring> {
    order: usize,
    coeffs: Vec<C>, // length order + 1
}

impl<C: Ring> Series1<C> {
    pub fn zero(order: usize) -> Self {
        Series1 {
            order,
            coeffs: vec![C::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = C::one();
        s
    }

    pub fn from_coeffs(order: usize, pairs: impl IntoIterator<Item = (usize, C)>) -> Self {
        let mut s = Self::zero(order);
        for (k, c) in pairs {
            if k <= order {
                s.coeffs[k] = s.coeffs[k].add(&c);
            }
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, k: usize) -> C {
        if k <= self.order {
            self.coeffs[k].clone()
        } else {
            C::zero()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        let order = self.order.min(o.order);
        Series1 {
            order,
            coeffs: (0..=order).map(|k| self.coeffs[k].add(&o.coeffs[k])).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let order = self.order.min(o.order);
        Series1 {
            order,
            coeffs: (0..=order).map(|k| self.coeffs[k].sub(&o.coeffs[k])).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Series1 {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn scale(&self, r: &Rat) -> Self {
        Series1 {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c.scale(r)).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let order = self.order.min(o.order);
        let mut coeffs = vec![C::zero(); order + 1];
        for i in 0..=order.min(self.order) {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(order - i).min(o.order) {
                if o.coeffs[j].is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].add(&self.coeffs[i].mul(&o.coeffs[j]));
            }
        }
        Series1 { order, coeffs }
    }

    /// Multiplicative inverse up to the truncation order.
    pub fn invert(&self) -> Result<Self, SeriesError> {
        let c0inv = self.coeffs[0]
            .inv_unit()
            .ok_or(SeriesError::NonInvertibleConstantTerm)?;
        let mut inv = vec![C::zero(); self.order + 1];
        inv[0] = c0inv.clone();
        for k in 1..=self.order {
            // c0 * inv[k] = - sum_{j=1..k} c_j inv[k-j]
            let mut acc = C::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc = acc.add(&self.coeffs[j].mul(&inv[k - j]));
                }
            }
            inv[k] = acc.neg().mul(&c0inv);
        }
        Ok(Series1 {
            order: self.order,
            coeffs: inv,
        })
    }

    /// `t d/dt`: multiplies the k-th coefficient by k.
    pub fn t_log_derivative(&self) -> Self {
        Series1 {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c.scale(&Rat::from_integer((k as i64).into())))
                .collect(),
        }
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        Series1 {
            order,
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }
}

/// Truncated bivariate series: coefficients of `t^i u^j` for `i + j <= order`.
#[derive(Clone, Debug, PartialEq)]
pub struct Series2<C: Ring> {
    order: usize,
    coeffs: BTreeMap<(usize, usize), C>, // only nonzero entries
}

impl<C: Ring> Series2<C> {
    pub fn zero(order: usize) -> Self {
        Series2 {
            order,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.set(0, 0, C::one());
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn set(&mut self, i: usize, j: usize, c: C) {
        assert!(i + j <= self.order, "coefficient outside truncation");
        if c.is_zero() {
            self.coeffs.remove(&(i, j));
        } else {
            self.coeffs.insert((i, j), c);
        }
    }

    pub fn coeff(&self, i: usize, j: usize) -> C {
        self.coeffs.get(&(i, j)).cloned().unwrap_or_else(C::zero)
    }

    pub fn add_to(&mut self, i: usize, j: usize, c: &C) {
        if i + j > self.order || c.is_zero() {
            return;
        }
        let v = self.coeff(i, j).add(c);
        self.set(i, j, v);
    }

    /// Embed a univariate series as a series in `t`.
    pub fn from_t(s: &Series1<C>, order: usize) -> Self {
        let mut out = Self::zero(order);
        for k in 0..=s.order().min(order) {
            out.set(k, 0, s.coeff(k));
        }
        out
    }

    /// Embed a univariate series as a series in `u`.
    pub fn from_u(s: &Series1<C>, order: usize) -> Self {
        let mut out = Self::zero(order);
        for k in 0..=s.order().min(order) {
            out.set(0, k, s.coeff(k));
        }
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        let order = self.order.min(o.order);
        let mut out = Self::zero(order);
        for (&(i, j), c) in self.coeffs.iter().chain(o.coeffs.iter()) {
            out.add_to(i, j, c);
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        Series2 {
            order: self.order,
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, c.neg())).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let order = self.order.min(o.order);
        let mut out = Self::zero(order);
        for (&(i1, j1), c1) in &self.coeffs {
            for (&(i2, j2), c2) in &o.coeffs {
                if i1 + i2 + j1 + j2 <= order {
                    out.add_to(i1 + i2, j1 + j2, &c1.mul(c2));
                }
            }
        }
        out
    }

    /// Inverse up to the truncation order; the constant term must be a unit.
    pub fn invert(&self) -> Result<Self, SeriesError> {
        let c0inv = self
            .coeff(0, 0)
            .inv_unit()
            .ok_or(SeriesError::NonInvertibleConstantTerm)?;
        // write S = c0 (1 - R) and expand the geometric series
        let mut r = self.neg();
        r.coeffs.remove(&(0, 0));
        let mut rm = r.clone();
        for c in rm.coeffs.values_mut() {
            *c = c.mul(&c0inv);
        }
        // rm = (c0 - S)/c0, inverse = (1/c0) * sum rm^k
        let mut acc = Self::one(self.order);
        let mut power = Self::one(self.order);
        for _ in 0..self.order {
            power = power.mul(&rm);
            if power.coeffs.is_empty() {
                break;
            }
            acc = acc.add(&power);
        }
        let mut out = acc;
        for c in out.coeffs.values_mut() {
            *c = c.mul(&c0inv);
        }
        Ok(out)
    }

    /// `t d/dt` in the first variable.
    pub fn t_log_derivative(&self) -> Self {
        Series2 {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .map(|(&(i, j), c)| ((i, j), c.scale(&Rat::from_integer((i as i64).into()))))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::rat::rat_i;
    use proptest::prelude::*;

    #[test]
    fn geometric_series() {
        // 1/(1-t) at order 4
        let s = Series1::from_coeffs(4, [(0, rat_i(1)), (1, rat_i(-1))]);
        let inv = s.invert().unwrap();
        for k in 0..=4 {
            assert_eq!(inv.coeff(k), rat_i(1));
        }
        // same through the bivariate type
        let s2 = Series2::from_t(&s, 4);
        let inv2 = s2.invert().unwrap();
        for k in 0..=4 {
            assert_eq!(inv2.coeff(k, 0), rat_i(1));
            if k > 0 {
                assert_eq!(inv2.coeff(0, k), rat_i(0));
            }
        }
        assert_eq!(s2.mul(&inv2), Series2::one(4));
    }

    #[test]
    fn t_log_derivative_of_cubic() {
        let s = Series1::from_coeffs(7, [(3, crate::exactpoly::rat(1, 3))]);
        let d = s.t_log_derivative();
        assert_eq!(d.coeff(3), rat_i(1));
        assert_eq!(d.coeff(5), rat_i(0));
    }

    #[test]
    fn non_invertible_constant_term() {
        let s = Series1::from_coeffs(3, [(1, rat_i(1))]);
        assert_eq!(s.invert(), Err(SeriesError::NonInvertibleConstantTerm));
        let s2 = Series2::from_t(&s, 3);
        assert_eq!(s2.invert(), Err(SeriesError::NonInvertibleConstantTerm));
    }

    #[test]
    fn bivariate_ops() {
        // t d/dt acts on the first variable only
        let mut s = Series2::<Rat>::zero(6);
        s.set(3, 2, rat_i(5));
        s.set(0, 4, rat_i(7));
        let d = s.t_log_derivative();
        assert_eq!(d.coeff(3, 2), rat_i(15));
        assert_eq!(d.coeff(0, 4), rat_i(0));
        // truncated product drops the overflowed corner
        let mut a = Series2::<Rat>::zero(4);
        a.set(2, 0, rat_i(1));
        let mut b = Series2::<Rat>::zero(4);
        b.set(1, 2, rat_i(1));
        assert_eq!(a.mul(&b).coeff(3, 2), rat_i(0));
        b.set(1, 1, rat_i(3));
        assert_eq!(a.mul(&b).coeff(3, 1), rat_i(3));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn invert_is_right_inverse(c0 in 1i64..5, cs in prop::collection::vec(-4i64..5, 5)) {
            let mut pairs = vec![(0usize, rat_i(c0))];
            for (k, &c) in cs.iter().enumerate() {
                pairs.push((k + 1, rat_i(c)));
            }
            let s = Series1::from_coeffs(5, pairs);
            let inv = s.invert().unwrap();
            let prod = s.mul(&inv);
            prop_assert_eq!(prod, Series1::one(5));
        }
    }
}
