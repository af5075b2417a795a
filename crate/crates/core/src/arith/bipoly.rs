use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{de::Error as _, Deserialize, Deserializer, Serialize, Serializer};

use super::upoly::format_terms;
use super::{fmt_rational, parse_rational, Rational, UniPoly};
use crate::error::{Error, Result};

/// Polynomial in `(t, x)` over Q, stored as a polynomial in `x` whose
/// coefficients are polynomials in `t` (lowest x-degree first, trimmed).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BiPoly {
    xc: Vec<UniPoly>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly { xc: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_x_coeffs(vec![UniPoly::constant(c)])
    }

    pub fn x() -> Self {
        Self::from_x_coeffs(vec![UniPoly::zero(), UniPoly::one()])
    }

    pub fn t() -> Self {
        Self::from_x_coeffs(vec![UniPoly::x()])
    }

    pub fn from_x_coeffs(mut xc: Vec<UniPoly>) -> Self {
        while xc.last().is_some_and(|c| c.is_zero()) {
            xc.pop();
        }
        BiPoly { xc }
    }

    /// Embeds a polynomial in `x` with constant coefficients.
    pub fn from_uni_x(p: &UniPoly) -> Self {
        Self::from_x_coeffs(p.coeffs().iter().cloned().map(UniPoly::constant).collect())
    }

    /// Embeds a polynomial in `t`, constant in `x`.
    pub fn from_uni_t(p: &UniPoly) -> Self {
        Self::from_x_coeffs(vec![p.clone()])
    }

    /// Parses an expression in the variables `t` and `x`.
    pub fn parse(s: &str) -> Result<Self> {
        super::expr::parse_bipoly(s, 't', 'x')
    }

    /// Parses with custom variable names.
    pub fn parse_in(s: &str, t_var: char, x_var: char) -> Result<Self> {
        super::expr::parse_bipoly(s, t_var, x_var)
    }

    pub fn x_coeffs(&self) -> &[UniPoly] {
        &self.xc
    }

    pub fn x_coeff(&self, k: usize) -> UniPoly {
        self.xc.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.xc.is_empty()
    }

    pub fn degree_x(&self) -> Option<usize> {
        self.xc.len().checked_sub(1)
    }

    pub fn degree_t(&self) -> Option<usize> {
        self.xc.iter().filter_map(|c| c.degree()).max()
    }

    /// Leading coefficient in `x`, a polynomial in `t`.
    pub fn lc_x(&self) -> UniPoly {
        self.xc.last().cloned().unwrap_or_default()
    }

    /// `Some(p)` when `self` does not involve `t`.
    pub fn to_uni_x(&self) -> Option<UniPoly> {
        if self.xc.iter().all(|c| c.is_constant()) {
            Some(UniPoly::from_coeffs(self.xc.iter().map(|c| c.coeff(0)).collect()))
        } else {
            None
        }
    }

    /// `Some(c)` when `self` is a nonzero constant.
    pub fn constant_value(&self) -> Option<Rational> {
        (self.xc.len() == 1 && self.xc[0].is_constant()).then(|| self.xc[0].coeff(0))
    }

    /// Nonzero terms as `(t_deg, x_deg, coeff)`.
    pub fn terms(&self) -> Vec<(usize, usize, Rational)> {
        let mut out = Vec::new();
        for (i, c) in self.xc.iter().enumerate() {
            for (j, a) in c.coeffs().iter().enumerate() {
                if !a.is_zero() {
                    out.push((j, i, a.clone()));
                }
            }
        }
        out
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (usize, usize, Rational)>) -> Self {
        let mut xc: Vec<Vec<Rational>> = Vec::new();
        for (j, i, a) in terms {
            if xc.len() <= i {
                xc.resize(i + 1, Vec::new());
            }
            if xc[i].len() <= j {
                xc[i].resize(j + 1, Rational::zero());
            }
            xc[i][j] += a;
        }
        Self::from_x_coeffs(xc.into_iter().map(UniPoly::from_coeffs).collect())
    }

    /// Specializes `t := v`.
    pub fn eval_t(&self, v: &Rational) -> UniPoly {
        UniPoly::from_coeffs(self.xc.iter().map(|c| c.eval(v)).collect())
    }

    /// Specializes `x := a`, leaving a polynomial in `t`.
    pub fn eval_x(&self, a: &Rational) -> UniPoly {
        self.xc.iter().rev().fold(UniPoly::zero(), |acc, c| &acc.scale(a) + c)
    }

    pub fn derivative_x(&self) -> Self {
        Self::from_x_coeffs(
            self.xc.iter().enumerate().skip(1).map(|(k, c)| c.scale(&Rational::from_integer(k.into()))).collect(),
        )
    }

    pub fn derivative_t(&self) -> Self {
        Self::from_x_coeffs(self.xc.iter().map(|c| c.derivative()).collect())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_x_coeffs(self.xc.iter().map(|p| p.scale(c)).collect())
    }

    /// Multiply by a polynomial in `t`.
    pub fn scale_t(&self, c: &UniPoly) -> Self {
        Self::from_x_coeffs(self.xc.iter().map(|p| p * c).collect())
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

    /// Substitutes `x := inner`.
    pub fn compose_x(&self, inner: &BiPoly) -> Self {
        self.xc.iter().rev().fold(Self::zero(), |acc, c| &(&acc * inner) + &Self::from_uni_t(c))
    }

    /// Substitutes `t := inner(t)`.
    pub fn compose_t(&self, inner: &UniPoly) -> Self {
        Self::from_x_coeffs(self.xc.iter().map(|c| c.compose(inner)).collect())
    }

    /// Exchanges the roles of `t` and `x`.
    pub fn swap(&self) -> Self {
        Self::from_terms(self.terms().into_iter().map(|(j, i, a)| (i, j, a)))
    }

    /// Division in Q[t][x] that must be exact.
    pub fn exact_div(&self, divisor: &BiPoly) -> Result<BiPoly> {
        if divisor.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let dd = divisor.xc.len() - 1;
        let lc = divisor.lc_x();
        let mut rem = self.xc.clone();
        if rem.len() <= dd {
            return if self.is_zero() { Ok(Self::zero()) } else { Err(Error::NonPolynomialQuotient) };
        }
        let mut quot = vec![UniPoly::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            if rem[k + dd].is_zero() {
                continue;
            }
            let c = rem[k + dd].exact_div(&lc)?;
            for (j, d) in divisor.xc.iter().enumerate() {
                rem[k + j] = &rem[k + j] - &(&c * d);
            }
            quot[k] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::NonPolynomialQuotient);
        }
        Ok(Self::from_x_coeffs(quot))
    }

    /// Greatest common divisor in Q[t] of the x-coefficients, monic.
    pub fn content_t(&self) -> UniPoly {
        self.xc.iter().fold(UniPoly::zero(), |g, c| UniPoly::gcd(&g, c))
    }

    /// Primitive in Z[t][x]: integer content and the Q[t]-content are divided
    /// out, and the leading term (highest x-degree, then highest t-degree) is
    /// positive.
    pub fn primitive_part(&self) -> BiPoly {
        if self.is_zero() {
            return Self::zero();
        }
        let g = self.content_t();
        let q = Self::from_x_coeffs(
            self.xc.iter().map(|c| c.exact_div(&g).expect("content divides every coefficient")).collect(),
        );
        let all: Vec<Rational> = q.xc.iter().flat_map(|c| c.coeffs().iter().cloned()).collect();
        let mut content = UniPoly::from_coeffs(all).content();
        if q.lc_x().lc().is_negative() {
            content = -content;
        }
        q.scale(&content.recip())
    }

    /// Divides out the Q[t]-content, leaving a polynomial primitive in `x`.
    fn primitive_in_x(&self) -> BiPoly {
        let g = self.content_t();
        Self::from_x_coeffs(
            self.xc.iter().map(|c| c.exact_div(&g).expect("content divides every coefficient")).collect(),
        )
    }

    /// Pseudo-remainder `lc(g)^(deg f - deg g + 1) f mod g`, computed without
    /// leaving Q[t][x].
    pub fn pseudo_rem(&self, g: &BiPoly) -> BiPoly {
        let dg = g.degree_x().expect("pseudo-division by zero");
        let lg = g.lc_x();
        let mut r = self.clone();
        while let Some(dr) = r.degree_x() {
            if dr < dg {
                break;
            }
            let lr = r.lc_x();
            let shifted = Self::from_x_coeffs(
                std::iter::repeat_n(UniPoly::zero(), dr - dg).chain(g.xc.iter().map(|c| c * &lr)).collect(),
            );
            r = &r.scale_t(&lg) - &shifted;
        }
        r
    }

    /// Greatest common divisor in Q[t][x], normalized by
    /// [`BiPoly::primitive_part`] except that the common Q[t]-content is kept.
    pub fn gcd(a: &BiPoly, b: &BiPoly) -> BiPoly {
        if a.is_zero() {
            return b.primitive_part().scale_t(&b.content_t());
        }
        if b.is_zero() {
            return a.primitive_part().scale_t(&a.content_t());
        }
        let content = UniPoly::gcd(&a.content_t(), &b.content_t());
        let (mut f, mut g) = (a.primitive_in_x(), b.primitive_in_x());
        if f.degree_x() < g.degree_x() {
            std::mem::swap(&mut f, &mut g);
        }
        while g.degree_x().is_some_and(|d| d > 0) {
            let r = f.pseudo_rem(&g);
            f = g;
            if r.is_zero() {
                return f.primitive_part().scale_t(&content);
            }
            g = r.primitive_in_x();
        }
        // A nonzero remainder of x-degree 0 means the primitive parts are
        // coprime.
        Self::from_uni_t(&content)
    }

    pub fn display_in(&self, t: &str, x: &str) -> String {
        let mut terms = self.terms();
        terms.sort_by_key(|t| std::cmp::Reverse((t.1, t.0)));
        let terms: Vec<((usize, usize), Rational)> = terms.into_iter().map(|(j, i, a)| ((j, i), a)).collect();
        format_terms(&terms, |(j, i)| {
            let mut parts = Vec::new();
            match j {
                0 => {}
                1 => parts.push(t.to_string()),
                _ => parts.push(format!("{t}^{j}")),
            }
            match i {
                0 => {}
                1 => parts.push(x.to_string()),
                _ => parts.push(format!("{x}^{i}")),
            }
            parts.join("*")
        })
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("t", "x"))
    }
}

fn combine(a: &[UniPoly], b: &[UniPoly], negate_b: bool) -> BiPoly {
    let n = a.len().max(b.len());
    let zero = UniPoly::zero();
    BiPoly::from_x_coeffs(
        (0..n)
            .map(|k| {
                let x = a.get(k).unwrap_or(&zero);
                let y = b.get(k).unwrap_or(&zero);
                if negate_b {
                    x - y
                } else {
                    x + y
                }
            })
            .collect(),
    )
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        combine(&self.xc, &rhs.xc, false)
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        combine(&self.xc, &rhs.xc, true)
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        if self.is_zero() || rhs.is_zero() {
            return BiPoly::zero();
        }
        let mut out = vec![UniPoly::zero(); self.xc.len() + rhs.xc.len() - 1];
        for (i, a) in self.xc.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.xc.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        BiPoly::from_x_coeffs(out)
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly { xc: self.xc.iter().map(|c| -c).collect() }
    }
}

impl Add for BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: BiPoly) -> BiPoly {
        &self + &rhs
    }
}

impl Sub for BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: BiPoly) -> BiPoly {
        &self - &rhs
    }
}

impl Mul for BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: BiPoly) -> BiPoly {
        &self * &rhs
    }
}

impl Neg for BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        -&self
    }
}

impl Serialize for BiPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<(usize, usize, String)> =
            self.terms().into_iter().map(|(j, i, a)| (j, i, fmt_rational(&a))).collect();
        terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for BiPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<(usize, usize, String)>::deserialize(d)?;
        let terms = raw
            .into_iter()
            .map(|(j, i, s)| parse_rational(&s).map(|a| (j, i, a)))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        Ok(BiPoly::from_terms(terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    #[test]
    fn arithmetic_and_specialization() {
        let f = BiPoly::parse("t*x^2 - (t+1)x + 3").unwrap();
        assert_eq!(f.degree_x(), Some(2));
        assert_eq!(f.degree_t(), Some(1));
        assert_eq!(f.eval_t(&int(2)), UniPoly::from_ints(&[3, -3, 2]));
        assert_eq!(f.eval_x(&int(1)), UniPoly::from_ints(&[2]));
        let g = &f * &BiPoly::parse("x - t").unwrap();
        assert_eq!(g.exact_div(&f).unwrap(), BiPoly::parse("x - t").unwrap());
        assert!(g.exact_div(&BiPoly::parse("x - 2").unwrap()).is_err());
    }

    #[test]
    fn primitive_part_removes_both_contents() {
        let f = BiPoly::parse("-(2t^2 - 2)(x^2 + 1/2 t)").unwrap();
        assert_eq!(f.primitive_part(), BiPoly::parse("2x^2 + t").unwrap());
        let g = BiPoly::parse("-3t^2 x").unwrap();
        assert_eq!(g.primitive_part(), BiPoly::x());
    }

    #[test]
    fn bivariate_gcd() {
        let common = BiPoly::parse("t x - 1").unwrap();
        let a = &common * &BiPoly::parse("x^2 + t").unwrap();
        let b = &common * &BiPoly::parse("(t+1) x - t^3").unwrap();
        assert_eq!(BiPoly::gcd(&a, &b), common);
        let c = BiPoly::parse("t^2 (x + 1)").unwrap();
        let d = BiPoly::parse("t (x - 1)").unwrap();
        assert_eq!(BiPoly::gcd(&c, &d), BiPoly::t());
        assert_eq!(BiPoly::gcd(&c, &BiPoly::zero()), c);
    }

    #[test]
    fn composition() {
        let f = BiPoly::parse("x^2 + t").unwrap();
        let inner = BiPoly::parse("x + 1").unwrap();
        assert_eq!(f.compose_x(&inner), BiPoly::parse("x^2 + 2x + 1 + t").unwrap());
        assert_eq!(f.swap(), BiPoly::parse("t^2 + x").unwrap());
        assert_eq!(f.compose_t(&UniPoly::from_ints(&[0, 0, 1])), BiPoly::parse("x^2 + t^2").unwrap());
    }

    #[test]
    fn display_and_json() {
        let f = BiPoly::parse("(t^2+3t)x^4 - 1/2 t^2").unwrap();
        assert_eq!(f.to_string(), "t^2*x^4 + 3*t*x^4 - 1/2*t^2");
        let s = serde_json::to_string(&f).unwrap();
        let back: BiPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
        assert_eq!(f.x_coeff(0).coeff(2), rat(-1, 2));
    }
}
