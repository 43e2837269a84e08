//! Exact rational arithmetic, polynomials and second-order ODE normal forms.

mod newton;
mod ode;
mod poly;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub use newton::{newton_leading_exponents, PuiseuxLeading};
pub use ode::{OdeSpec, OdeSpecJson, P0Json};
pub use poly::RationalPoly;

/// Always-reduced rational with a positive denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("leading coefficient of P0 is zero")]
    ZeroLeading,
    #[error("P0, P1 and P2 share the common factor {0}")]
    CommonFactor(String),
    #[error("root {0} of P0 is listed more than once")]
    DuplicateRoot(String),
    #[error("root {0} of P0 has multiplicity zero")]
    ZeroMultiplicity(String),
    #[error("cannot parse rational '{0}'")]
    BadRational(String),
    #[error("malformed ODE description: {0}")]
    Schema(String),
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"`, `"-p/q"` or a bare integer.
pub fn parse_rational(s: &str) -> Result<Rational, AlgebraError> {
    let t = s.trim();
    let bad = || AlgebraError::BadRational(s.to_string());
    let r = match t.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Rational::new(n, d)
        }
        None => Rational::from_integer(BigInt::from_str(t).map_err(|_| bad())?),
    };
    Ok(r)
}

/// `"num/den"`, or just `"num"` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Exact square root of a non-negative rational, when it exists.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer();
    let d = r.denom();
    let sn = n.sqrt();
    let sd = d.sqrt();
    (&sn * &sn == *n && &sd * &sd == *d).then(|| Rational::new(sn, sd))
}

/// A point of the Riemann sphere with a rational finite part.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Point {
    Finite(Rational),
    Infinity,
}

impl Point {
    pub fn finite(r: Rational) -> Self {
        Point::Finite(r)
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Finite(r) => write!(f, "{r}"),
            Point::Infinity => write!(f, "inf"),
        }
    }
}

impl FromStr for Point {
    type Err = AlgebraError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(Point::Infinity),
            other => parse_rational(other).map(Point::Finite),
        }
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Serde adapter writing a rational as its `"num/den"` string.
pub mod rational_str {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}
