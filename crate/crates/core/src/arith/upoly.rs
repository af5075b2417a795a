use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{de::Error as _, Deserialize, Deserializer, Serialize, Serializer};

use super::{fmt_rational, gcd_of_numerators, lcm_of_denominators, parse_rational, Rational};
use crate::error::{Error, Result};

/// Dense univariate polynomial over Q, lowest degree first.
///
/// The coefficient vector never ends in a zero; the zero polynomial is the
/// empty vector.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn from_bigints(coeffs: &[BigInt]) -> Self {
        Self::from_coeffs(coeffs.iter().cloned().map(Rational::from_integer).collect())
    }

    /// Product of `(x - r)` over the given roots.
    pub fn from_roots(roots: &[Rational]) -> Self {
        roots.iter().fold(Self::one(), |acc, r| &acc * &Self::from_coeffs(vec![-r.clone(), Rational::one()]))
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0; convenient where zero
    /// cannot occur.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn lc(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * Rational::from_integer(BigInt::from(k))).collect(),
        )
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        UniPoly { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UniPoly { coeffs }
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let inv = self.lc().recip();
        self.scale(&inv)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// `self(inner(x))`.
    pub fn compose(&self, inner: &UniPoly) -> Self {
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| &(&acc * inner) + &Self::constant(c.clone()))
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let dd = divisor.deg();
        if self.degree().is_none_or(|d| d < dd) {
            return (Self::zero(), self.clone());
        }
        let inv_lc = divisor.lc().recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &inv_lc;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * d;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }

    pub fn rem(&self, divisor: &UniPoly) -> UniPoly {
        self.div_rem(divisor).1
    }

    /// Quotient when `divisor` divides `self` exactly.
    pub fn exact_div(&self, divisor: &UniPoly) -> Result<UniPoly> {
        if divisor.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let (q, r) = self.div_rem(divisor);
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::NonPolynomialQuotient)
        }
    }

    pub fn divides(&self, other: &UniPoly) -> bool {
        !self.is_zero() && other.rem(self).is_zero()
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(a: &UniPoly, b: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            // Keeping the remainders primitive stops rational blow-up.
            a = b;
            b = r.primitive_part();
        }
        a.monic()
    }

    /// Integer content: the positive rational `c` with `self / c` a primitive
    /// integer polynomial. Zero for the zero polynomial.
    pub fn content(&self) -> Rational {
        if self.is_zero() {
            return Rational::zero();
        }
        let l = lcm_of_denominators(&self.coeffs);
        let scaled: Vec<Rational> = self.coeffs.iter().map(|c| c * Rational::from_integer(l.clone())).collect();
        let g = gcd_of_numerators(&scaled);
        Rational::new(g, l)
    }

    /// Primitive integer polynomial with positive leading coefficient.
    pub fn primitive_part(&self) -> UniPoly {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.lc().is_negative() {
            c = -c;
        }
        self.scale(&c.recip())
    }

    /// Integer coefficients of [`UniPoly::primitive_part`].
    pub fn integer_coeffs(&self) -> Vec<BigInt> {
        self.primitive_part().coeffs.into_iter().map(|c| c.to_integer()).collect()
    }

    pub fn is_squarefree(&self) -> bool {
        UniPoly::gcd(self, &self.derivative()).is_constant()
    }

    /// Parses a polynomial such as `"3/2*x^2 - x + 1"` in the variable `var`.
    pub fn parse(s: &str, var: char) -> Result<UniPoly> {
        super::expr::parse_unipoly(s, var)
    }

    pub fn display_in(&self, var: &str) -> String {
        let terms: Vec<(usize, Rational)> =
            self.coeffs.iter().enumerate().rev().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k, c.clone())).collect();
        format_terms(&terms, |k| match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        })
    }
}

/// Shared pretty-printer: `terms` are (exponent key, coefficient) pairs in
/// print order.
pub(crate) fn format_terms<K: Copy>(terms: &[(K, Rational)], monomial: impl Fn(K) -> String) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (k, c)) in terms.iter().enumerate() {
        let mono = monomial(*k);
        let neg = c.is_negative();
        let abs = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let coef = if abs.is_integer() { abs.numer().to_string() } else { format!("{}/{}", abs.numer(), abs.denom()) };
        if mono.is_empty() {
            out.push_str(&coef);
        } else if abs.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&coef);
            out.push('*');
            out.push_str(&mono);
        }
    }
    out
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("x"))
    }
}

fn add_coeffs(a: &[Rational], b: &[Rational], negate_b: bool) -> UniPoly {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let x = a.get(k).cloned().unwrap_or_else(Rational::zero);
        let y = b.get(k).cloned().unwrap_or_else(Rational::zero);
        out.push(if negate_b { x - y } else { x + y });
    }
    UniPoly::from_coeffs(out)
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        add_coeffs(&self.coeffs, &rhs.coeffs, false)
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        add_coeffs(&self.coeffs, &rhs.coeffs, true)
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        UniPoly::from_coeffs(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for UniPoly {
            type Output = UniPoly;
            fn $m(self, rhs: UniPoly) -> UniPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        -&self
    }
}

impl Serialize for UniPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let strs: Vec<String> = self.coeffs.iter().map(fmt_rational).collect();
        strs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for UniPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let strs = Vec::<String>::deserialize(d)?;
        let coeffs = strs.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>().map_err(D::Error::custom)?;
        Ok(UniPoly::from_coeffs(coeffs))
    }
}

/// `sum c_i a^i b^(n-i)`: the numerator of `f(a/b) * b^n` for integer `f`.
pub(crate) fn eval_homogeneous(coeffs: &[BigInt], a: &BigInt, b: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    let mut bpow = BigInt::one();
    for c in coeffs.iter().rev() {
        acc = acc * a + c * &bpow;
        bpow *= b;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    #[test]
    fn gcd_examples() {
        // x^2 - 1 and (x - 1)^2
        assert_eq!(UniPoly::gcd(&p(&[-1, 0, 1]), &p(&[1, -2, 1])), p(&[-1, 1]));
        // x^3 - x and x^2
        assert_eq!(UniPoly::gcd(&p(&[0, -1, 0, 1]), &p(&[0, 0, 1])), p(&[0, 1]));
        assert_eq!(UniPoly::gcd(&p(&[4, 2]), &UniPoly::zero()), p(&[2, 1]));
        assert!(UniPoly::gcd(&UniPoly::zero(), &UniPoly::zero()).is_zero());
    }

    #[test]
    fn division_and_composition() {
        let a = p(&[-1, 0, 0, 1]);
        let b = p(&[-1, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, p(&[1, 1, 1]));
        assert!(r.is_zero());
        assert!(p(&[1, 0, 1]).exact_div(&b).is_err());
        assert_eq!(p(&[0, 0, 1]).compose(&p(&[1, 1])), p(&[1, 2, 1]));
        assert_eq!(p(&[1, 1]).pow(3), p(&[1, 3, 3, 1]));
    }

    #[test]
    fn primitive_normalization() {
        let f = UniPoly::from_coeffs(vec![rat(-1, 2), rat(3, 4)]);
        assert_eq!(f.primitive_part(), p(&[-2, 3]));
        assert_eq!(p(&[4, -6]).primitive_part(), p(&[-2, 3]));
        assert_eq!(f.integer_coeffs(), vec![BigInt::from(-2), BigInt::from(3)]);
    }

    #[test]
    fn parse_and_display() {
        let f = UniPoly::parse("x^6 - 2*x^5 + 3/2x - 1", 'x').unwrap();
        assert_eq!(f.coeff(6), int(1));
        assert_eq!(f.coeff(5), int(-2));
        assert_eq!(f.coeff(1), rat(3, 2));
        assert_eq!(f.coeff(0), int(-1));
        assert_eq!(f.to_string(), "x^6 - 2*x^5 + 3/2*x - 1");
        assert_eq!(UniPoly::parse("(2x-1)", 'x').unwrap(), p(&[-1, 2]));
        assert_eq!(UniPoly::parse("-(x+1)^2", 'x').unwrap(), p(&[-1, -2, -1]));
        assert!(UniPoly::parse("2y", 'x').is_err());
    }

    #[test]
    fn json_round_trip() {
        let f = UniPoly::from_coeffs(vec![rat(1, 2), int(0), int(-3)]);
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"["1/2","0/1","-3/1"]"#);
        assert_eq!(serde_json::from_str::<UniPoly>(&s).unwrap(), f);
    }

    #[test]
    fn homogeneous_evaluation() {
        // 2x^3 - 3x^2 - 3x + 2 at 1/2, scaled by 2^3
        let c: Vec<BigInt> = [2, -3, -3, 2].iter().map(|&v| BigInt::from(v)).collect();
        assert!(eval_homogeneous(&c, &BigInt::from(1), &BigInt::from(2)).is_zero());
        assert_eq!(eval_homogeneous(&c, &BigInt::from(1), &BigInt::from(1)), BigInt::from(-2));
    }
}
