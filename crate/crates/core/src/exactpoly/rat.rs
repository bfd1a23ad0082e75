//! Exact rational scalars.
//!
//! `Rat` is an arbitrary-precision rational, always stored reduced with a
//! positive denominator (zero is `0/1`). Serialized form is the string
//! `"num/den"`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

pub type Rat = BigRational;

/// `n` as a rational.
pub fn rat_i(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `n/d` reduced. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Canonical string form `num/den` with `den > 0` and `gcd(|num|, den) = 1`.
pub fn fmt_rat(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseRatError {
    #[error("malformed rational literal `{0}`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Parse `"p/q"` or a plain integer `"p"`.
pub fn parse_rat(s: &str) -> Result<Rat, ParseRatError> {
    let bad = || ParseRatError::Malformed(s.to_string());
    match s.split_once('/') {
        None => {
            let n: BigInt = s.trim().parse().map_err(|_| bad())?;
            Ok(Rat::from_integer(n))
        }
        Some((p, q)) => {
            let n: BigInt = p.trim().parse().map_err(|_| bad())?;
            let d: BigInt = q.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(ParseRatError::ZeroDenominator(s.to_string()));
            }
            Ok(Rat::new(n, d))
        }
    }
}

/// Invariant check used by tests: reduced form with positive denominator.
pub fn is_canonical(r: &Rat) -> bool {
    use num_integer::Integer;
    r.denom().is_positive() && r.numer().gcd(r.denom()).is_one()
}

use num_traits::One;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let r = rat(6, -4);
        assert_eq!(r, rat(-3, 2));
        assert!(is_canonical(&r));
        assert_eq!(fmt_rat(&r), "-3/2");
        assert!(is_canonical(&Rat::zero()));
        assert_eq!(fmt_rat(&Rat::zero()), "0/1");
    }

    #[test]
    fn parse_round_trip() {
        for s in ["25/18", "-125/432", "7", "0/1"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(parse_rat(&fmt_rat(&r)).unwrap(), r);
        }
        assert_eq!(
            parse_rat("3/0"),
            Err(ParseRatError::ZeroDenominator("3/0".into()))
        );
        assert!(parse_rat("a/b").is_err());
    }
}
