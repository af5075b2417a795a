use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{BiPoly, Rational, UniPoly};
use crate::error::{Error, Result};

/// An integral domain with exact division, enough for fraction-free
/// elimination.
pub trait ExactRing: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self {
        Self::zero().sub(self)
    }
    /// `self / o`, where the caller guarantees divisibility.
    fn exact_div(&self, o: &Self) -> Self;
}

impl ExactRing for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
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
    fn exact_div(&self, o: &Self) -> Self {
        self / o
    }
}

/// Integers, wrapped so the ring methods do not shadow `Zero`/`One` on `BigInt`.
#[derive(Clone, PartialEq)]
struct Z(BigInt);

impl ExactRing for Z {
    fn zero() -> Self {
        Z(BigInt::from(0))
    }
    fn one() -> Self {
        Z(BigInt::from(1))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.0)
    }
    fn add(&self, o: &Self) -> Self {
        Z(&self.0 + &o.0)
    }
    fn sub(&self, o: &Self) -> Self {
        Z(&self.0 - &o.0)
    }
    fn mul(&self, o: &Self) -> Self {
        Z(&self.0 * &o.0)
    }
    fn exact_div(&self, o: &Self) -> Self {
        Z(&self.0 / &o.0)
    }
}

impl ExactRing for UniPoly {
    fn zero() -> Self {
        UniPoly::zero()
    }
    fn one() -> Self {
        UniPoly::one()
    }
    fn is_zero(&self) -> bool {
        UniPoly::is_zero(self)
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
    fn exact_div(&self, o: &Self) -> Self {
        UniPoly::exact_div(self, o).expect("Bareiss quotients are exact")
    }
}

/// Determinant by fraction-free Gaussian elimination with row pivoting.
pub fn det_bareiss<R: ExactRing>(mut m: Vec<Vec<R>>) -> R {
    let n = m.len();
    if n == 0 {
        return R::one();
    }
    let mut sign_flip = false;
    let mut prev = R::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign_flip = !sign_flip;
                }
                None => return R::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = v.exact_div(&prev);
            }
            m[i][k] = R::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign_flip {
        d.neg()
    } else {
        d
    }
}

/// Sylvester-matrix resultant of two polynomials given by coefficient
/// slices, lowest degree first and without trailing zeros.
pub fn resultant_bareiss<R: ExactRing>(a: &[R], b: &[R]) -> R {
    if a.is_empty() || b.is_empty() {
        return R::zero();
    }
    let m = a.len() - 1;
    let n = b.len() - 1;
    let size = m + n;
    if size == 0 {
        return R::one();
    }
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![R::zero(); size];
        for (k, c) in a.iter().rev().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![R::zero(); size];
        for (k, c) in b.iter().rev().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    det_bareiss(rows)
}

/// Resultant over Q by the Euclidean recurrence
/// `Res(a, b) = (-1)^(mn) lc(b)^(m-k) Res(b, a mod b)`.
pub fn resultant(a: &UniPoly, b: &UniPoly) -> Rational {
    if a.is_zero() || b.is_zero() {
        return <Rational as Zero>::zero();
    }
    let mut a = a.clone();
    let mut b = b.clone();
    let mut acc = <Rational as One>::one();
    loop {
        let m = a.deg();
        let n = b.deg();
        if n == 0 {
            return acc * pow(&b.lc(), m);
        }
        if m == 0 {
            return acc * pow(&a.lc(), n);
        }
        let r = a.rem(&b);
        if r.is_zero() {
            return <Rational as Zero>::zero();
        }
        let k = r.deg();
        if (m * n) % 2 == 1 {
            acc = -acc;
        }
        acc *= pow(&b.lc(), m - k);
        a = b;
        b = r;
    }
}

fn pow(q: &Rational, k: usize) -> Rational {
    num_traits::pow(q.clone(), k)
}

fn disc_sign(d: usize) -> bool {
    (d * (d - 1) / 2) % 2 == 1
}

/// `disc(p) = (-1)^(d(d-1)/2) Res(p, p') / lc(p)`.
pub fn discriminant(p: &UniPoly) -> Result<Rational> {
    match p.degree() {
        None => Err(Error::ZeroPolynomial),
        Some(0) => Err(Error::ConstantPolynomial),
        Some(d) => {
            let r = resultant(p, &p.derivative()) / p.lc();
            Ok(if disc_sign(d) { -r } else { r })
        }
    }
}

/// Resultant with respect to `x`, a polynomial in `t`.
///
/// The Sylvester determinant is evaluated at `t = 0, 1, ..., D` with the
/// formal `x`-degrees kept, so each value is a specialization of the
/// generic resultant, and the result is recovered by interpolation. `D`
/// bounds the `t`-degree of the resultant.
pub fn resultant_x(a: &BiPoly, b: &BiPoly) -> UniPoly {
    let (Some(m), Some(n)) = (a.degree_x(), b.degree_x()) else {
        return UniPoly::from_coeffs(Vec::new());
    };
    // Res(sa A, sb B) = sa^n sb^m Res(A, B) with A, B integral.
    let (sa, ia) = integral(a);
    let (sb, ib) = integral(b);
    let scale = pow(&sa, n) * pow(&sb, m);
    let bound = m * b.degree_t().unwrap_or(0) + n * a.degree_t().unwrap_or(0);
    let xs: Vec<BigInt> = (0..=bound).map(BigInt::from).collect();
    let ys: Vec<Rational> = xs
        .iter()
        .map(|t| {
            let ac: Vec<Z> = ia.iter().map(|c| Z(eval_int(c, t))).collect();
            let bc: Vec<Z> = ib.iter().map(|c| Z(eval_int(c, t))).collect();
            Rational::from_integer(resultant_bareiss(&ac, &bc).0)
        })
        .collect();
    let xs: Vec<Rational> = xs.into_iter().map(Rational::from_integer).collect();
    interpolate(&xs, &ys).scale(&scale)
}

/// `p = s * P` with `P` having integer coefficients in `t`.
fn integral(p: &BiPoly) -> (Rational, Vec<Vec<BigInt>>) {
    let lcm = p
        .x_coeffs()
        .iter()
        .flat_map(|c| c.coeffs().iter().map(|q| q.denom().clone()))
        .fold(BigInt::from(1), |acc, d| acc.lcm(&d));
    let ints = p
        .x_coeffs()
        .iter()
        .map(|c| c.coeffs().iter().map(|q| (q * Rational::from_integer(lcm.clone())).to_integer()).collect())
        .collect();
    (Rational::new(BigInt::from(1), lcm), ints)
}

fn eval_int(c: &[BigInt], t: &BigInt) -> BigInt {
    c.iter().rev().fold(BigInt::from(0), |acc, a| acc * t + a)
}

/// The polynomial of degree below `xs.len()` through the given points, by
/// Newton divided differences.
fn interpolate(xs: &[Rational], ys: &[Rational]) -> UniPoly {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    let mut acc = UniPoly::constant(dd[n - 1].clone());
    for i in (0..n - 1).rev() {
        let lin = UniPoly::from_coeffs(vec![-xs[i].clone(), <Rational as One>::one()]);
        acc = &(&acc * &lin) + &UniPoly::constant(dd[i].clone());
    }
    acc
}

/// Discriminant with respect to `x`, a polynomial in `t`.
pub fn discriminant_x(p: &BiPoly) -> Result<UniPoly> {
    match p.degree_x() {
        None => Err(Error::ZeroPolynomial),
        Some(0) => Err(Error::ConstantPolynomial),
        Some(d) => {
            let r = resultant_x(p, &p.derivative_x()).exact_div(&p.lc_x())?;
            Ok(if disc_sign(d) { -r } else { r })
        }
    }
}
