use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{MapOverQ, RationalMap};
use crate::arith::{int, resultant_x, serde_rational, BiPoly, Rational, UniPoly};
use crate::error::{Error, Result};

/// Elementary symmetric functions `(r, s)` of the three fixed-point
/// multipliers of a quadratic map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MilnorPoint {
    #[serde(with = "serde_rational")]
    pub r: Rational,
    #[serde(with = "serde_rational")]
    pub s: Rational,
}

impl MilnorPoint {
    pub fn new(r: Rational, s: Rational) -> Self {
        MilnorPoint { r, s }
    }
}

/// Plane curves in Milnor coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Curve {
    /// Quadratic polynomials: `r = 2`.
    C1,
    /// A 2-periodic critical point: `s = -2r`.
    C2,
    /// Nontrivial automorphism group.
    SymmetryLocus,
}

impl Curve {
    pub const ALL: [Curve; 3] = [Curve::C1, Curve::C2, Curve::SymmetryLocus];

    pub fn name(self) -> &'static str {
        match self {
            Curve::C1 => "C1",
            Curve::C2 => "C2",
            Curve::SymmetryLocus => "S",
        }
    }
}

/// Exact evaluation of the curve's defining equation.
pub fn on_curve(p: &MilnorPoint, curve: Curve) -> bool {
    let (r, s) = (&p.r, &p.s);
    match curve {
        Curve::C1 => *r == int(2),
        Curve::C2 => *s == -(r * int(2)),
        Curve::SymmetryLocus => {
            let r2 = r * r;
            let value =
                -(&r2 * r * int(2)) - &r2 * s + &r2 + r * s * int(8) + s * s * int(4) - r * int(12) - s * int(12)
                    + int(36);
            value.is_zero()
        }
    }
}

/// `(sigma_1, sigma_2)` of the fixed-point multipliers, without extracting
/// fixed points.
///
/// When infinity is fixed the map is first conjugated by `x -> c + 1/x` for
/// the least integer `c >= 0` that is not fixed. The multipliers are then the
/// roots of `Res_x(p - x q, y q^2 - (p' q - p q'))` in `y`.
pub fn milnor_coordinates(f: &MapOverQ) -> Result<MilnorPoint> {
    if f.degree() != 2 {
        return Err(Error::DegenerateMap(f.degree()));
    }
    let g = if f.num().deg() > f.den().deg() {
        let c = (0i64..)
            .map(int)
            .find(|c| f.eval(c).as_ref() != Some(c))
            .expect("a quadratic map has at most three fixed points");
        f.conjugate(&RationalMap::mobius(c, int(1), int(1), int(0))?)?
    } else {
        f.clone()
    };
    let fixed = g.num() - &(&UniPoly::x() * g.den());
    let (n, d) = g.derivative_parts();
    // y * D(x) - N(x) with y in the parameter slot.
    let y_d = &BiPoly::from_uni_x(&d) * &BiPoly::t();
    let char_poly = resultant_x(&BiPoly::from_uni_x(&fixed), &(&y_d - &BiPoly::from_uni_x(&n)));
    debug_assert_eq!(char_poly.degree(), Some(3));
    let lc = char_poly.lc();
    Ok(MilnorPoint { r: -(char_poly.coeff(2) / &lc), s: char_poly.coeff(1) / lc })
}
