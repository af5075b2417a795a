use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::MapPoly;
use crate::arith::{BiPoly, Rational, UniPoly};
use crate::error::{Error, Result};

/// A rational function `num / den` in lowest terms over the base field.
///
/// Equality is equality of functions: `a/b == c/d` iff `a d == b c`.
#[derive(Clone, Debug)]
pub struct RationalMap<P> {
    num: P,
    den: P,
}

/// A map with rational coefficients.
pub type MapOverQ = RationalMap<UniPoly>;
/// A map whose coefficients are polynomials in a parameter `t`.
pub type MapOverQt = RationalMap<BiPoly>;

impl<P: MapPoly> PartialEq for RationalMap<P> {
    fn eq(&self, other: &Self) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl<P: MapPoly> RationalMap<P> {
    /// Reduces `num / den` to lowest terms. A constant result is rejected.
    pub fn new(num: P, den: P) -> Result<Self> {
        let m = Self::reduce(num, den)?;
        if m.degree() == 0 {
            return Err(Error::DegenerateMap(0));
        }
        Ok(m)
    }

    fn reduce(num: P, den: P) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let g = P::gcd(&num, &den);
        if g != P::one() && !g.is_zero() {
            return Ok(RationalMap { num: num.exact_div(&g)?, den: den.exact_div(&g)? });
        }
        Ok(RationalMap { num, den })
    }

    pub fn identity() -> Self {
        RationalMap { num: P::x(), den: P::one() }
    }

    /// The Möbius map `(a x + b) / (c x + d)`.
    pub fn mobius(a: Rational, b: Rational, c: Rational, d: Rational) -> Result<Self> {
        let num = P::x().scale(&a).add(&P::constant(b));
        let den = P::x().scale(&c).add(&P::constant(d));
        let m = Self::new(num, den)?;
        if m.degree() != 1 {
            return Err(Error::InvalidArgument("Möbius map must have degree 1".into()));
        }
        Ok(m)
    }

    pub fn num(&self) -> &P {
        &self.num
    }

    pub fn den(&self) -> &P {
        &self.den
    }

    pub fn degree(&self) -> usize {
        self.num.degree_x().unwrap_or(0).max(self.den.degree_x().unwrap_or(0))
    }

    /// `self ∘ inner`, substituted homogeneously and reduced.
    pub fn compose(&self, inner: &Self) -> Self {
        let d = self.degree();
        let mut num_pows = vec![P::one()];
        let mut den_pows = vec![P::one()];
        for k in 1..=d {
            num_pows.push(num_pows[k - 1].mul(&inner.num));
            den_pows.push(den_pows[k - 1].mul(&inner.den));
        }
        let mut num = P::zero();
        let mut den = P::zero();
        for i in 0..=d {
            let basis = num_pows[i].mul(&den_pows[d - i]);
            num = num.add(&self.num.x_coeff_poly(i).mul(&basis));
            den = den.add(&self.den.x_coeff_poly(i).mul(&basis));
        }
        // Substituting coprime forms into coprime forms keeps them coprime,
        // so only a common content in the parameter can appear.
        let g = P::common_content(&num, &den);
        if g != P::one() {
            num = num.exact_div(&g).expect("content divides");
            den = den.exact_div(&g).expect("content divides");
        }
        RationalMap { num, den }
    }

    /// The `n`-fold composite.
    pub fn iterate(&self, n: usize) -> Self {
        assert!(n >= 1, "iterate needs n >= 1");
        self.iterates(n).pop().expect("n >= 1")
    }

    /// `[f, f^2, ..., f^n]`.
    pub fn iterates(&self, n: usize) -> Vec<Self> {
        let mut out: Vec<Self> = Vec::with_capacity(n);
        for k in 0..n {
            let next = match k {
                0 => self.clone(),
                _ => self.compose(&out[k - 1]),
            };
            out.push(next);
        }
        out
    }

    /// Inverse of a degree-1 map.
    pub fn mobius_inverse(&self) -> Result<Self> {
        if self.degree() != 1 {
            return Err(Error::InvalidArgument("only degree-1 maps are inverted".into()));
        }
        let (a, b) = (self.num.x_coeff_poly(1), self.num.x_coeff_poly(0));
        let (c, d) = (self.den.x_coeff_poly(1), self.den.x_coeff_poly(0));
        let zero = P::zero();
        let num = P::x().mul(&d).sub(&b);
        let den = zero.sub(&P::x().mul(&c)).add(&a);
        Self::new(num, den)
    }

    /// `m^-1 ∘ self ∘ m`.
    pub fn conjugate(&self, m: &Self) -> Result<Self> {
        Ok(m.mobius_inverse()?.compose(&self.compose(m)))
    }

    /// `(N, D)` with `self' = N / D`: `N = p' q - p q'`, `D = q^2`.
    pub fn derivative_parts(&self) -> (P, P) {
        let n = self.num.derivative_x().mul(&self.den).sub(&self.num.mul(&self.den.derivative_x()));
        (n, self.den.mul(&self.den))
    }
}

impl MapOverQ {
    /// Parses `"P(x)/Q(x)"`, a polynomial, or any quotient expression in `x`.
    pub fn parse(s: &str) -> Result<Self> {
        let f = crate::arith::parse_fraction_in(s, None, 'x')?;
        let num = f.num.to_uni_x().expect("single-variable parse");
        let den = f.den.to_uni_x().expect("single-variable parse");
        Self::new(num, den)
    }

    /// Specialization of a map over Q(t) at `t = v`.
    pub fn specialize(f: &MapOverQt, v: &Rational) -> Result<Self> {
        Self::new(f.num.eval_t(v), f.den.eval_t(v))
    }

    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        (!num_traits::Zero::is_zero(&d)).then(|| self.num.eval(x) / d)
    }
}

impl MapOverQt {
    /// Parses an expression in `x` and the parameter `t`.
    pub fn parse(s: &str) -> Result<Self> {
        Self::parse_in(s, 't')
    }

    pub fn parse_in(s: &str, param: char) -> Result<Self> {
        let f = crate::arith::parse_fraction_in(s, Some(param), 'x')?;
        Self::new(f.num, f.den)
    }

    /// Embeds a map over Q.
    pub fn from_q(f: &MapOverQ) -> Self {
        RationalMap { num: BiPoly::from_uni_x(&f.num), den: BiPoly::from_uni_x(&f.den) }
    }
}

impl<P: MapPoly> fmt::Display for RationalMap<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", self.num, self.den)
    }
}

#[derive(Serialize, Deserialize)]
struct MapWire<P> {
    num: P,
    den: P,
}

impl<P: MapPoly + Serialize> Serialize for RationalMap<P> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MapWire { num: &self.num, den: &self.den }.serialize(s)
    }
}

impl<'de, P: MapPoly + Deserialize<'de>> Deserialize<'de> for RationalMap<P> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = MapWire::<P>::deserialize(d)?;
        RationalMap::new(w.num, w.den).map_err(serde::de::Error::custom)
    }
}
