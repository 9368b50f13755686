//! Canonical text form for exact rationals.
//!
//! Every rational that crosses a serialization boundary is written as a
//! lowest-terms `"p/q"` string with a positive denominator, including
//! integers (`"5/1"`). Plain integers (counts, totals) are written without
//! the denominator. Floats never appear except in fields named `*_approx`.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};
use std::str::FromStr;

/// Formats a rational as lowest-terms `"p/q"`. The denominator is always
/// present and positive; the sign sits on the numerator.
pub fn format_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `"p/q"` or a bare integer `"p"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational, RationalParseError> {
    let s = s.trim();
    let (numer, denom) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let n = BigInt::from_str(numer).map_err(|_| RationalParseError::bad(s))?;
    let d = match denom {
        Some(d) => BigInt::from_str(d).map_err(|_| RationalParseError::bad(s))?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(RationalParseError::zero_denominator(s));
    }
    if d.is_negative() {
        return Err(RationalParseError::negative_denominator(s));
    }
    Ok(BigRational::new(n, d))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RationalParseError {
    #[error("cannot parse {0:?} as a rational (expected \"p/q\" or an integer)")]
    Malformed(String),
    #[error("rational {0:?} has a zero denominator")]
    ZeroDenominator(String),
    #[error("rational {0:?} has a negative denominator (sign belongs on the numerator)")]
    NegativeDenominator(String),
}

impl RationalParseError {
    fn bad(s: &str) -> Self {
        RationalParseError::Malformed(s.to_string())
    }
    fn zero_denominator(s: &str) -> Self {
        RationalParseError::ZeroDenominator(s.to_string())
    }
    fn negative_denominator(s: &str) -> Self {
        RationalParseError::NegativeDenominator(s.to_string())
    }
}

/// Shorthand used all over the test suites: `rat(1, 3)` is `1/3`.
pub fn rat(numer: i64, denom: i64) -> BigRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Nearest f64 to an exact rational, for display-only `*_approx` fields.
pub fn approx_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}
