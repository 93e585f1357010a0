//! Exact rational scalars on the unit interval.
//!
//! Every value handled by the crate (arguments, endpoints, function outputs)
//! is a [`Q01`]: an arbitrary-precision rational in lowest terms that is
//! guaranteed to lie in `[0, 1]`. Intermediate quantities that may leave the
//! unit interval (slopes, intercepts, normalised summand coordinates) use the
//! unconstrained [`Rat`] alias.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Unconstrained exact rational.
pub type Rat = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumericError {
    #[error("value {0} lies outside [0,1]")]
    RangeViolation(String),
    #[error("malformed rational {0:?}: expected \"p/q\" or \"p\" with decimal digits")]
    Malformed(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

/// An exact rational number constrained to `[0, 1]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Q01(Rat);

impl Q01 {
    pub fn zero() -> Self {
        Q01(Rat::zero())
    }

    pub fn one() -> Self {
        Q01(Rat::one())
    }

    /// `numer / denom` from machine integers.
    ///
    /// Panics when the denominator is zero or the value is outside `[0, 1]`;
    /// intended for literals. Use [`Q01::try_from_rat`] for checked input.
    pub fn frac(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        let r = Rat::new(BigInt::from(numer), BigInt::from(denom));
        Self::try_from_rat(r).expect("literal outside [0,1]")
    }

    pub fn try_from_rat(r: Rat) -> Result<Self, NumericError> {
        if r.is_negative() || r > Rat::one() {
            Err(NumericError::RangeViolation(r.to_string()))
        } else {
            Ok(Q01(r))
        }
    }

    /// Clamp an arbitrary rational into `[0, 1]`.
    pub fn clamp_rat(r: Rat) -> Self {
        if r.is_negative() {
            Self::zero()
        } else if r > Rat::one() {
            Self::one()
        } else {
            Q01(r)
        }
    }

    pub fn as_rat(&self) -> &Rat {
        &self.0
    }

    pub fn into_rat(self) -> Rat {
        self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn add(&self, other: &Q01) -> Result<Q01, NumericError> {
        Self::try_from_rat(&self.0 + &other.0)
    }

    pub fn sub(&self, other: &Q01) -> Result<Q01, NumericError> {
        Self::try_from_rat(&self.0 - &other.0)
    }

    /// Product of two unit-interval values never leaves `[0, 1]`.
    pub fn mul(&self, other: &Q01) -> Q01 {
        Q01(&self.0 * &other.0)
    }

    /// `min(x + y, 1)`.
    pub fn add_clamped(&self, other: &Q01) -> Q01 {
        Self::clamp_rat(&self.0 + &other.0)
    }

    /// `max(x - y, 0)`.
    pub fn sub_floored(&self, other: &Q01) -> Q01 {
        Self::clamp_rat(&self.0 - &other.0)
    }

    pub fn min_of(&self, other: &Q01) -> Q01 {
        std::cmp::min(self, other).clone()
    }

    pub fn max_of(&self, other: &Q01) -> Q01 {
        std::cmp::max(self, other).clone()
    }

    pub fn midpoint(&self, other: &Q01) -> Q01 {
        Q01((&self.0 + &other.0) / Rat::from_integer(BigInt::from(2)))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

/// Three-way comparison; agrees with integer cross-multiplication.
pub fn cmp(x: &Q01, y: &Q01) -> Ordering {
    x.cmp(y)
}

/// Parse `"p/q"` or `"p"` (ASCII decimal digits, no sign, no whitespace).
pub fn parse_rational(text: &str) -> Result<Q01, NumericError> {
    let malformed = || NumericError::Malformed(text.to_string());
    let digits = |s: &str| -> Result<BigInt, NumericError> {
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(malformed());
        }
        BigInt::from_str(s).map_err(|_| malformed())
    };
    let (p, q) = match text.split_once('/') {
        Some((p, q)) => (digits(p)?, digits(q)?),
        None => (digits(text)?, BigInt::one()),
    };
    if q.is_zero() {
        return Err(NumericError::ZeroDenominator(text.to_string()));
    }
    Q01::try_from_rat(Rat::new(p, q))
}

impl FromStr for Q01 {
    type Err = NumericError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_rational(s)
    }
}

impl fmt::Display for Q01 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Q01 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for Q01 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Q01 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }
}

/// Rational from machine integers (no range restriction).
pub fn rat(numer: i64, denom: i64) -> Rat {
    Rat::new(BigInt::from(numer), BigInt::from(denom))
}

/// Parse an unconstrained rational such as a slope or intercept.
/// Accepts an optional leading `-`.
pub fn parse_signed_rational(text: &str) -> Result<Rat, NumericError> {
    let (neg, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let malformed = || NumericError::Malformed(text.to_string());
    let digits = |s: &str| -> Result<BigInt, NumericError> {
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(malformed());
        }
        BigInt::from_str(s).map_err(|_| malformed())
    };
    let (p, q) = match body.split_once('/') {
        Some((p, q)) => (digits(p)?, digits(q)?),
        None => (digits(body)?, BigInt::one()),
    };
    if q.is_zero() {
        return Err(NumericError::ZeroDenominator(text.to_string()));
    }
    let r = Rat::new(p, q);
    Ok(if neg { -r } else { r })
}
