use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::{Error, Result};

pub type Rational = BigRational;

/// Commutative algebra over the rationals.
///
/// Implemented by `f64` (approximately), [`Rational`] and the exponential
/// coefficient ring used by the exact main-term backend.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_i64(v: i64) -> Self;

    fn from_rational(r: &Rational) -> Self;

    /// `self / d` for a nonzero integer `d`.
    fn div_i64(&self, d: i64) -> Self;

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num).div_i64(den)
    }
}

/// A [`Scalar`] with general division.
pub trait Field: Scalar + Div<Output = Self> {}

impl Scalar for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn from_rational(r: &Rational) -> Self {
        rational_to_f64(r)
    }

    fn div_i64(&self, d: i64) -> Self {
        self / d as f64
    }
}

impl Field for f64 {}

impl Scalar for Rational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn div_i64(&self, d: i64) -> Self {
        self / BigRational::from_integer(BigInt::from(d))
    }
}

impl Field for Rational {}

/// Exact rational value of a finite double.
pub fn rational_from_f64(x: f64) -> Result<Rational> {
    BigRational::from_float(x).ok_or_else(|| Error::NonFinite(format!("{x}")))
}

pub fn rational_to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Parses a decimal literal (`-0.642`, `1.3`, `5e-3`) or a fraction (`4/7`)
/// into an exact rational.
pub fn parse_decimal(text: &str) -> Result<Rational> {
    let bad = || Error::validation("decimal or fraction literal", text);
    let t = text.trim();
    if let Some((n, d)) = t.split_once('/') {
        let n = parse_decimal(n)?;
        let d = parse_decimal(d)?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(n / d);
    }
    let (mantissa, exp) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (t, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all = format!("{int_part}{frac_part}");
    let num = BigInt::from_str(if all.is_empty() { "0" } else { &all }).map_err(|_| bad())?;
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut r = BigRational::from_integer(num);
    if scale >= 0 {
        r *= BigRational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        r /= BigRational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Ok(if neg { -r } else { r })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn decimals_are_exact() {
        assert_eq!(parse_decimal("-0.642").unwrap(), q(-642, 1000));
        assert_eq!(parse_decimal("1.3").unwrap(), q(13, 10));
        assert_eq!(parse_decimal(".177").unwrap(), q(177, 1000));
        assert_eq!(parse_decimal("4/7").unwrap(), q(4, 7));
        assert_eq!(parse_decimal("5e-3").unwrap(), q(1, 200));
        assert_eq!(parse_decimal("2").unwrap(), q(2, 1));
        assert!(parse_decimal("abc").is_err());
        assert!(parse_decimal("1/0").is_err());
    }

    #[test]
    fn shortest_float_repr_round_trips_to_literal() {
        for lit in ["-0.642", "1.155", "-5.178", "1.116", "0.838"] {
            let f: f64 = lit.parse().unwrap();
            assert_eq!(parse_decimal(&f.to_string()).unwrap(), parse_decimal(lit).unwrap());
        }
    }
}
