//! Arbitrary-precision rationals and their `"p/q"` text form.

use alloc::format;
use alloc::string::String;
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::AlgebraError;

/// Exact rational number. Always reduced with a positive denominator.
pub type Rational = BigRational;

pub fn rational(numer: i64, denom: i64) -> Rational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn integer(value: i64) -> Rational {
    BigRational::from_integer(BigInt::from(value))
}

/// Renders `r` as `"p/q"`; integers keep the explicit `/1`.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `"p/q"` or a bare integer `"p"`.
pub fn parse_rational(text: &str) -> Result<Rational, AlgebraError> {
    let bad = || AlgebraError::Parse(String::from(text));
    let text = text.trim();
    let (numer, denom) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let numer = BigInt::from_str(numer).map_err(|_| bad())?;
    let denom = BigInt::from_str(denom).map_err(|_| bad())?;
    if denom.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(numer, denom))
}

/// Exact conversion of a finite float (every finite `f64` is a dyadic rational).
pub fn rational_from_f64(value: f64) -> Option<Rational> {
    BigRational::from_float(value)
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Ratio::to_f64 only fails on overflow of both parts.
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}
