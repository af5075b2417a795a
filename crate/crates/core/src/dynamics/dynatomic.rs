use super::{MapPoly, RationalMap};
use crate::error::Result;

/// The Möbius function.
pub fn mobius(n: usize) -> i32 {
    assert!(n >= 1);
    let mut n = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// `x q_d - p_d` for the reduced iterate `f^d = p_d / q_d`, normalized.
fn period_factor<P: MapPoly>(fd: &RationalMap<P>) -> P {
    P::x().mul(fd.den()).sub(fd.num()).normalize()
}

/// The `n`th dynatomic polynomial `prod_{d | n} (x q_d - p_d)^mu(n/d)`.
///
/// Each factor is made primitive (over Z, and over Z[t] for maps over Q(t))
/// with positive leading coefficient before the product is taken; no monic
/// rescaling happens afterwards.
pub fn dynatomic<P: MapPoly>(f: &RationalMap<P>, n: usize) -> Result<P> {
    assert!(n >= 1, "dynatomic needs n >= 1");
    let iterates = f.iterates(n);
    let mut numer = P::one();
    let mut denom = P::one();
    for d in (1..=n).filter(|d| n.is_multiple_of(*d)) {
        match mobius(n / d) {
            1 => numer = numer.mul(&period_factor(&iterates[d - 1])),
            -1 => denom = denom.mul(&period_factor(&iterates[d - 1])),
            _ => {}
        }
    }
    numer.exact_div(&denom)
}
