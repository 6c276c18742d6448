//! Exact rational arithmetic and the polynomial / rational-function /
//! Gaussian-weighted function types everything else is built on.
//!
//! All polynomials live in the dimensionless variable `z = sqrt(omega/2) x`;
//! frequencies only ever appear as a floating `scale` or as an overall factor.

mod exppoly;
mod polynomial;
mod ratfun;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use exppoly::{ExpPolyFunction, GaussSign};
pub use polynomial::{horner, Polynomial};
pub use ratfun::RationalFunction;

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `"n/d"` (or `"n"` for integers).
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Reads `"n/d"`, `"n"` or a terminating decimal such as `"-0.5"`, exactly.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => match s.split_once('.') {
            Some((whole, frac)) => {
                if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
                    return None;
                }
                let digits: BigInt = format!("{whole}{frac}").parse().ok()?;
                let scale = num_traits::pow(BigInt::from(10), frac.len());
                Some(Rational::new(digits, scale))
            }
            None => Some(Rational::from_integer(s.parse().ok()?)),
        },
    }
}

/// Coefficients as `["n/d", ...]`, lowest power first.
pub fn poly_to_strings(p: &Polynomial) -> Vec<String> {
    p.coeffs().iter().map(format_rational).collect()
}

/// Serde adapter writing a `Rational` as the string `"n/d"`.
pub mod rational_serde {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, serializer: S) -> Result<S::Ok, S::Error> {
        format_rational(r).serialize(serializer)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(deserializer)?;
        parse_rational(&s).ok_or_else(|| D::Error::custom(format!("bad rational {s:?}")))
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        poly_to_strings(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = Vec::<String>::deserialize(deserializer)?;
        let coeffs = raw
            .iter()
            .map(|s| parse_rational(s).ok_or_else(|| D::Error::custom(format!("bad rational {s:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Polynomial::new(coeffs))
    }
}

#[derive(Serialize, Deserialize)]
struct RationalFunctionRepr {
    num: Polynomial,
    den: Polynomial,
}

impl Serialize for RationalFunction {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        RationalFunctionRepr {
            num: self.num().clone(),
            den: self.den().clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RationalFunction {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = RationalFunctionRepr::deserialize(deserializer)?;
        RationalFunction::reduce(repr.num, repr.den).map_err(D::Error::custom)
    }
}
