//! Exact arithmetic: big rationals, univariate polynomials over Q, bivariate
//! polynomials in (t, x), resultants, and complete rational-root finding.

mod bipoly;
mod expr;
pub mod intfactor;
mod resultant;
mod roots;
mod upoly;

pub use bipoly::BiPoly;
pub(crate) use expr::parse_fraction as parse_fraction_in;
pub use intfactor::FactorEffort;
pub use resultant::{det_bareiss, discriminant, discriminant_x, resultant, resultant_bareiss, resultant_x, ExactRing};
pub use roots::{rational_roots, rational_roots_with};
pub use upoly::UniPoly;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar. Normalized on construction: the denominator is
/// positive and coprime to the numerator.
pub type Rational = num_rational::BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"a/b"`, `"a"`, or `"-a/b"`; whitespace around the parts is ignored.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let parse_int = |part: &str| -> Result<BigInt> {
        part.trim().parse::<BigInt>().map_err(|_| Error::Parse(format!("not a rational number: {s:?}")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(parse_int(n)?, d))
        }
        None => Ok(Rational::from_integer(parse_int(s)?)),
    }
}

/// The wire form `"num/den"`, always with an explicit denominator.
pub fn fmt_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Human form: integers print without a denominator.
pub fn fmt_rational_short(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        fmt_rational(q)
    }
}

/// Height of a rational number: max(|num|, den).
pub fn height(q: &Rational) -> BigInt {
    let n = q.numer().abs();
    let d = q.denom().clone();
    if n > d {
        n
    } else {
        d
    }
}

pub(crate) fn lcm_of_denominators<'a>(qs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    qs.into_iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

pub(crate) fn gcd_of_numerators<'a>(qs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    qs.into_iter().fold(BigInt::zero(), |acc, q| acc.gcd(q.numer()))
}

/// Serde adapters for the `"num/den"` string form.
pub mod serde_rational {
    use super::{fmt_rational, parse_rational, Rational};
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(D::Error::custom)
    }
}
