//! Rational maps as dynamical systems over Q or over Q(t).

mod critical;
mod dynatomic;
mod map;
mod milnor;
mod normal;
mod orbit;

pub use critical::{has_n_periodic_critical_point, wronskian};
pub use dynatomic::{dynatomic, mobius};
pub use map::{MapOverQ, MapOverQt, RationalMap};
pub use milnor::{milnor_coordinates, on_curve, Curve, MilnorPoint};
pub use normal::{auto_map, no_auto_map, normal_form, NormalForm};
pub use orbit::{orbit, OrbitRecord, ProjPoint};

use std::fmt::{Debug, Display};

use crate::arith::{BiPoly, Rational, UniPoly};
use crate::error::Result;

/// Polynomial ring in `x` over the base (Q or Q[t]) that maps are built from.
pub trait MapPoly: Clone + PartialEq + Debug + Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn x() -> Self;
    fn constant(c: Rational) -> Self;
    fn is_zero(&self) -> bool;
    /// Degree in `x`.
    fn degree_x(&self) -> Option<usize>;
    /// The coefficient of `x^k`, embedded as a polynomial of x-degree 0.
    fn x_coeff_poly(&self, k: usize) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn scale(&self, c: &Rational) -> Self;
    fn pow(&self, k: u32) -> Self;
    fn derivative_x(&self) -> Self;
    /// Substitutes `x := inner`.
    fn compose_x(&self, inner: &Self) -> Self;
    fn exact_div(&self, o: &Self) -> Result<Self>;
    /// A greatest common divisor, up to a unit of the base field.
    fn gcd(a: &Self, b: &Self) -> Self;
    /// The common factor of x-degree 0 (always 1 over Q).
    fn common_content(a: &Self, b: &Self) -> Self;
    /// Canonical associate: primitive over Z (and over Z[t]) with positive
    /// leading coefficient.
    fn normalize(&self) -> Self;
    /// Value at `x = a` as a polynomial of x-degree 0.
    fn eval_x_poly(&self, a: &Rational) -> Self;
    /// Leading coefficient in `x`, embedded.
    fn lc_x_poly(&self) -> Self {
        match self.degree_x() {
            Some(d) => self.x_coeff_poly(d),
            None => Self::zero(),
        }
    }
}

impl MapPoly for UniPoly {
    fn zero() -> Self {
        UniPoly::zero()
    }
    fn one() -> Self {
        UniPoly::one()
    }
    fn x() -> Self {
        UniPoly::x()
    }
    fn constant(c: Rational) -> Self {
        UniPoly::constant(c)
    }
    fn is_zero(&self) -> bool {
        UniPoly::is_zero(self)
    }
    fn degree_x(&self) -> Option<usize> {
        self.degree()
    }
    fn x_coeff_poly(&self, k: usize) -> Self {
        UniPoly::constant(self.coeff(k))
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn scale(&self, c: &Rational) -> Self {
        UniPoly::scale(self, c)
    }
    fn pow(&self, k: u32) -> Self {
        UniPoly::pow(self, k)
    }
    fn derivative_x(&self) -> Self {
        self.derivative()
    }
    fn compose_x(&self, inner: &Self) -> Self {
        self.compose(inner)
    }
    fn exact_div(&self, o: &Self) -> Result<Self> {
        UniPoly::exact_div(self, o)
    }
    fn gcd(a: &Self, b: &Self) -> Self {
        UniPoly::gcd(a, b)
    }
    fn common_content(_: &Self, _: &Self) -> Self {
        UniPoly::one()
    }
    fn normalize(&self) -> Self {
        self.primitive_part()
    }
    fn eval_x_poly(&self, a: &Rational) -> Self {
        UniPoly::constant(self.eval(a))
    }
}

impl MapPoly for BiPoly {
    fn zero() -> Self {
        BiPoly::zero()
    }
    fn one() -> Self {
        BiPoly::one()
    }
    fn x() -> Self {
        BiPoly::x()
    }
    fn constant(c: Rational) -> Self {
        BiPoly::constant(c)
    }
    fn is_zero(&self) -> bool {
        BiPoly::is_zero(self)
    }
    fn degree_x(&self) -> Option<usize> {
        BiPoly::degree_x(self)
    }
    fn x_coeff_poly(&self, k: usize) -> Self {
        BiPoly::from_uni_t(&self.x_coeff(k))
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn scale(&self, c: &Rational) -> Self {
        BiPoly::scale(self, c)
    }
    fn pow(&self, k: u32) -> Self {
        BiPoly::pow(self, k)
    }
    fn derivative_x(&self) -> Self {
        BiPoly::derivative_x(self)
    }
    fn compose_x(&self, inner: &Self) -> Self {
        BiPoly::compose_x(self, inner)
    }
    fn exact_div(&self, o: &Self) -> Result<Self> {
        BiPoly::exact_div(self, o)
    }
    fn gcd(a: &Self, b: &Self) -> Self {
        BiPoly::gcd(a, b)
    }
    fn common_content(a: &Self, b: &Self) -> Self {
        BiPoly::from_uni_t(&UniPoly::gcd(&a.content_t(), &b.content_t()))
    }
    fn normalize(&self) -> Self {
        self.primitive_part()
    }
    fn eval_x_poly(&self, a: &Rational) -> Self {
        BiPoly::from_uni_t(&self.eval_x(a))
    }
}
