use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Fractional digits used when rendering exact values as decimals.
pub const DECIMAL_DIGITS: usize = 20;

/// Arbitrary-precision rational in lowest terms with positive denominator.
pub type Rational = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: impl Into<BigInt>) -> Rational {
    Rational::from_integer(value.into())
}

/// Parses `"p"` or `"p/q"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    s.trim()
        .parse::<Rational>()
        .map_err(|e| Error::InvalidParameter(format!("cannot parse rational '{s}': {e}")))
}

/// Nearest double. Values beyond the double range saturate to ±∞.
pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Decimal expansion with exactly `digits` fractional digits, rounded half
/// away from zero.
pub fn to_decimal_string(r: &Rational, digits: usize) -> String {
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled = r.abs() * Rational::from_integer(scale.clone());
    let (q, rem) = scaled.numer().div_rem(scaled.denom());
    let twice = rem * 2u32;
    let rounded = if twice >= *scaled.denom() {
        q + 1u32
    } else {
        q
    };
    let (whole, frac) = rounded.div_rem(&scale);
    let sign = if r.is_negative() && !(whole.is_zero() && frac.is_zero()) {
        "-"
    } else {
        ""
    };
    if digits == 0 {
        format!("{sign}{whole}")
    } else {
        format!(
            "{sign}{whole}.{:0>width$}",
            frac.to_string(),
            width = digits
        )
    }
}

/// An exact value rendered both ways: `decimal` is the integer itself or a
/// [`DECIMAL_DIGITS`]-digit expansion, `rational` is `p` or `p/q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactValue {
    pub decimal: String,
    pub rational: String,
}

impl ExactValue {
    pub fn new(r: &Rational) -> Self {
        let decimal = if r.is_integer() {
            r.to_integer().to_string()
        } else {
            to_decimal_string(r, DECIMAL_DIGITS)
        };
        ExactValue {
            decimal,
            rational: r.to_string(),
        }
    }

    pub fn parse(&self) -> Result<Rational> {
        parse_rational(&self.rational)
    }
}
