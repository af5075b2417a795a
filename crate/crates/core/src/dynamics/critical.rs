use super::{dynatomic, MapPoly, RationalMap};
use crate::arith::int;
use crate::error::{Error, Result};

/// `p' q - p q'`, whose finite roots (away from poles) are the critical
/// points of `p / q`.
pub fn wronskian<P: MapPoly>(f: &RationalMap<P>) -> P {
    f.derivative_parts().0
}

/// Whether some critical point of `f` has formal period `n`.
///
/// `f` is first conjugated by `x -> c + 1/x` for the least integer `c >= 0`
/// that is not a root of the `n`th dynatomic polynomial, so that every
/// `n`-periodic point is finite. A critical point then lies on an `n`-cycle
/// exactly when the Wronskian shares a factor with the dynatomic polynomial.
pub fn has_n_periodic_critical_point<P: MapPoly>(f: &RationalMap<P>, n: usize) -> Result<bool> {
    let phi = dynatomic(f, n)?;
    let c = (0i64..)
        .map(int)
        .find(|c| !phi.eval_x_poly(c).is_zero())
        .expect("a nonzero polynomial has finitely many roots");
    // x -> c + 1/x = (c x + 1) / x
    let sigma = RationalMap::<P>::mobius(c, int(1), int(1), int(0))?;
    let g = f.conjugate(&sigma)?;
    let phi_g = dynatomic(&g, n)?;
    if P::gcd(&phi_g, &phi_g.derivative_x()).degree_x() != Some(0) {
        return Err(Error::InseparableDynatomic);
    }
    let shared = P::gcd(&wronskian(&g), &phi_g);
    Ok(shared.degree_x().is_some_and(|d| d > 0))
}
