//! Exact rational scalars.
//!
//! All distances in this crate are nonnegative rationals with arbitrary
//! precision, so axiom checks and iteration bounds are decided exactly. The
//! textual form is `"p/q"` (or `"p"` for integers), and it is the only form
//! distances take on the wire: floating point never crosses an interface.

use alloc::string::{String, ToString};
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Exact rational scalar used for every distance and bound in the crate.
pub type Rational = num_rational::BigRational;

/// Rational extended with a positive infinity.
///
/// Hausdorff-style distances over arbitrary set families take values in the
/// extended nonnegative rationals. Over a finite space every supremum is
/// attained, so [`ExtendedRational::Infinite`] is never actually produced;
/// it exists so the interface states the honest codomain.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtendedRational {
    /// An attained, finite value.
    Finite(Rational),
    /// Positive infinity. Reserved for interface parity; no operation on a
    /// finite space returns it.
    Infinite,
}

impl ExtendedRational {
    /// The finite value, if this is one.
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            ExtendedRational::Finite(value) => Some(value),
            ExtendedRational::Infinite => None,
        }
    }

    /// True when this is the infinite value.
    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtendedRational::Infinite)
    }
}

impl From<Rational> for ExtendedRational {
    fn from(value: Rational) -> Self {
        ExtendedRational::Finite(value)
    }
}

impl fmt::Display for ExtendedRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedRational::Finite(value) => write!(f, "{value}"),
            ExtendedRational::Infinite => write!(f, "inf"),
        }
    }
}

/// Error produced when a string does not denote a rational number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RationalParseError {
    /// The text is not of the form `p` or `p/q` with integer `p`, `q`.
    Malformed(String),
    /// The denominator is zero.
    ZeroDenominator(String),
}

impl fmt::Display for RationalParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RationalParseError::Malformed(text) => {
                write!(f, "`{text}` is not a rational (expected `p` or `p/q`)")
            }
            RationalParseError::ZeroDenominator(text) => {
                write!(f, "`{text}` has a zero denominator")
            }
        }
    }
}

impl core::error::Error for RationalParseError {}

/// Parses `"p/q"` or `"p"` into an exact rational.
///
/// Whitespace is not accepted and the denominator must be nonzero. The sign
/// may appear on either component; the result is normalized.
pub fn parse_rational(text: &str) -> Result<Rational, RationalParseError> {
    let (numer, denom) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let numer =
        BigInt::from_str(numer).map_err(|_| RationalParseError::Malformed(text.to_string()))?;
    let denom = match denom {
        Some(d) => {
            BigInt::from_str(d).map_err(|_| RationalParseError::Malformed(text.to_string()))?
        }
        None => BigInt::from(1),
    };
    if denom.is_zero() {
        return Err(RationalParseError::ZeroDenominator(text.to_string()));
    }
    Ok(Rational::new(numer, denom))
}

/// Formats a rational as `"p/q"`, or `"p"` when the denominator is one.
pub fn rational_to_string(value: &Rational) -> String {
    value.to_string()
}

/// Shorthand constructor for `n/d`. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand constructor for the integer rational `n`.
pub fn integer(n: i64) -> Rational {
    Rational::from(BigInt::from(n))
}

/// True when `value` is strictly between zero and one.
pub fn in_open_unit_interval(value: &Rational) -> bool {
    value.is_positive() && *value < integer(1)
}
