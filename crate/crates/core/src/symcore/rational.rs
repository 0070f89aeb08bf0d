//! Exact rationals. Backed by `num_rational::BigRational`, which keeps
//! values normalized (coprime, positive denominator, zero as 0/1).

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::{AlgebraError, Result};

pub type Rational = num_rational::BigRational;

/// Integer-valued rational.
pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `num / den`, normalized. Panics on a zero denominator.
pub fn qf(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"7"`, `"-3/4"`, with optional surrounding whitespace.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || AlgebraError::Invalid(format!("not a rational number: `{text}`"));
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(AlgebraError::Invalid("zero denominator".into()));
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(text.parse().map_err(|_| bad())?)),
    }
}

/// Exact square root when the rational is the square of a rational.
pub fn rational_sqrt(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    if &(&n * &n) == x.numer() && &(&d * &d) == x.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

/// Random rational `n/d` with `|n| <= height`, `1 <= d <= den_height`.
pub fn random_rational<R: Rng + ?Sized>(rng: &mut R, height: i64, den_height: i64) -> Rational {
    let n = rng.gen_range(-height..=height);
    let d = rng.gen_range(1..=den_height.max(1));
    qf(n, d)
}

/// Random nonzero rational with the same shape as [`random_rational`].
pub fn random_nonzero_rational<R: Rng + ?Sized>(
    rng: &mut R,
    height: i64,
    den_height: i64,
) -> Rational {
    loop {
        let r = random_rational(rng, height, den_height);
        if !r.is_zero() {
            return r;
        }
    }
}

pub fn is_integer(x: &Rational) -> bool {
    x.denom().is_one()
}

/// Canonical text form: `3`, `-1/2`.
pub fn fmt_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization() {
        let x = qf(6, -4);
        assert_eq!(x.numer(), &BigInt::from(-3));
        assert_eq!(x.denom(), &BigInt::from(2));
        assert_eq!(qf(0, 5), q(0));
        assert_eq!(q(0).denom(), &BigInt::from(1));
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(parse_rational(" -3/4 ").unwrap(), qf(-3, 4));
        assert_eq!(parse_rational("12").unwrap(), q(12));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(fmt_rational(&qf(10, 4)), "5/2");
        assert_eq!(fmt_rational(&q(-7)), "-7");
    }

    #[test]
    fn square_roots() {
        assert_eq!(rational_sqrt(&qf(9, 4)), Some(qf(3, 2)));
        assert_eq!(rational_sqrt(&q(2)), None);
        assert_eq!(rational_sqrt(&q(-4)), None);
        assert_eq!(rational_sqrt(&q(0)), Some(q(0)));
    }
}
