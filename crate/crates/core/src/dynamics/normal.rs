use serde::Serialize;

use super::{milnor_coordinates, on_curve, Curve, MapOverQ, MilnorPoint};
use crate::arith::{fmt_rational, int, Rational, UniPoly};
use crate::error::{Error, Result};

/// Outcome of [`normal_form`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum NormalForm {
    /// Conjugate to `v (x - 1) / x^2`.
    NoAuto {
        #[serde(with = "crate::arith::serde_rational")]
        v: Rational,
    },
    /// Conjugate to `(2x - 1) / (v x^2 - 1)`.
    Auto {
        #[serde(with = "crate::arith::serde_rational")]
        v: Rational,
    },
    /// Not one of the recognized shapes.
    NotInScope,
}

/// Recognizes the shapes that put a quadratic map with a 2-periodic critical
/// point into one of the two families.
///
/// * `v (x - 1) / x^2` itself.
/// * `(2x^2 + (2-r)x + (2-r)) / (-x^2 + (2+r)x + 2 - r - s)` with `s = -2r`,
///   which `x -> (2 - x)/(x - 1)` conjugates to the no-auto map with
///   `v = r + 6` (checked, not assumed).
/// * `(a x + b) / (x^2 + c x + b)` at the Milnor point `(-6, 12)`, which
///   forces `a = -2b`, `c = 0` and gives the auto map with `v = -1/b`.
pub fn normal_form(f: &MapOverQ) -> Result<NormalForm> {
    let m = milnor_coordinates(f)?;
    if !on_curve(&m, Curve::C2) {
        return Err(Error::NotOnC2 { r: fmt_rational(&m.r), s: fmt_rational(&m.s) });
    }
    if m == MilnorPoint::new(int(-6), int(12)) {
        return Ok(auto_shape(f).unwrap_or(NormalForm::NotInScope));
    }
    if let Some(v) = no_auto_shape(f) {
        return Ok(NormalForm::NoAuto { v });
    }
    if let Some(nf) = milnor_normal_shape(f)? {
        return Ok(nf);
    }
    Ok(NormalForm::NotInScope)
}

/// The no-auto family member `v (x - 1) / x^2`.
pub fn no_auto_map(v: &Rational) -> Result<MapOverQ> {
    MapOverQ::new(UniPoly::from_coeffs(vec![-v.clone(), v.clone()]), UniPoly::from_ints(&[0, 0, 1]))
}

/// The auto family member `(2x - 1) / (v x^2 - 1)`.
pub fn auto_map(v: &Rational) -> Result<MapOverQ> {
    MapOverQ::new(UniPoly::from_ints(&[-1, 2]), UniPoly::from_coeffs(vec![int(-1), int(0), v.clone()]))
}

/// Scales `(num, den)` so that `den` has leading coefficient 1.
fn monic_pair(f: &MapOverQ) -> (UniPoly, UniPoly) {
    let inv = f.den().lc().recip();
    (f.num().scale(&inv), f.den().scale(&inv))
}

fn no_auto_shape(f: &MapOverQ) -> Option<Rational> {
    let (num, den) = monic_pair(f);
    if den != UniPoly::from_ints(&[0, 0, 1]) || num.degree() != Some(1) {
        return None;
    }
    let v = num.coeff(1);
    (num.coeff(0) == -v.clone()).then_some(v)
}

fn auto_shape(f: &MapOverQ) -> Option<NormalForm> {
    let (num, den) = monic_pair(f);
    if den.degree() != Some(2) || num.degree().is_none_or(|d| d > 1) {
        return None;
    }
    let (a, b, c) = (num.coeff(1), num.coeff(0), den.coeff(1));
    if den.coeff(0) != b || num_traits::Zero::is_zero(&b) {
        return None;
    }
    // At the Milnor point (-6, 12) the shape forces these relations.
    if a != -(&b * int(2)) || !num_traits::Zero::is_zero(&c) {
        return None;
    }
    Some(NormalForm::Auto { v: -b.recip() })
}

/// The Milnor normal form with `s = -2r`, scaled so the numerator leads
/// with 2.
fn milnor_normal_shape(f: &MapOverQ) -> Result<Option<NormalForm>> {
    if f.num().degree() != Some(2) || f.den().degree() != Some(2) {
        return Ok(None);
    }
    let k = int(2) / f.num().lc();
    let (num, den) = (f.num().scale(&k), f.den().scale(&k));
    let r = int(2) - num.coeff(1);
    if num.coeff(0) != num.coeff(1) || den.coeff(2) != int(-1) || den.coeff(1) != int(2) + &r {
        return Ok(None);
    }
    let s = int(2) - &r - den.coeff(0);
    if s != -(&r * int(2)) {
        return Ok(None);
    }
    let sigma = MapOverQ::parse("(2-x)/(x-1)")?;
    let v = r + int(6);
    let conj = f.conjugate(&sigma)?;
    if conj != no_auto_map(&v)? {
        return Ok(None);
    }
    Ok(Some(NormalForm::NoAuto { v }))
}
