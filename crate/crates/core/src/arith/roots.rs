use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::intfactor::{divisors, factorize, FactorEffort};
use super::upoly::eval_homogeneous;
use super::{Rational, UniPoly};
use crate::error::{Error, Result};

/// Small primes tried by the modular prefilter.
const SIEVE_PRIMES: [u64; 24] =
    [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97];
/// How many modular root sets are kept for filtering candidates.
const FILTER_PRIMES: usize = 6;

/// Every rational root of `p`, sorted ascending, with the default effort.
pub fn rational_roots(p: &UniPoly) -> Result<Vec<Rational>> {
    rational_roots_with(p, &FactorEffort::default())
}

/// Every rational root of `p`, sorted ascending.
///
/// Zero roots are stripped first; the remaining candidates `a/b` have `a`
/// dividing the constant term and `b` the leading coefficient. A prime at
/// which `p` has no roots proves there are none, which skips factoring
/// entirely in the common case.
pub fn rational_roots_with(p: &UniPoly, effort: &FactorEffort) -> Result<Vec<Rational>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut c = p.integer_coeffs();
    let mut roots = BTreeSet::new();
    let zeros = c.iter().take_while(|a| a.is_zero()).count();
    if zeros > 0 {
        roots.insert(Rational::zero());
        c.drain(..zeros);
    }
    let n = c.len() - 1;
    if n == 0 {
        return Ok(roots.into_iter().collect());
    }
    if n == 1 {
        roots.insert(Rational::new(-c[0].clone(), c[1].clone()));
        return Ok(roots.into_iter().collect());
    }

    let lc = c[n].clone();
    let mut filters: Vec<(u64, Vec<bool>)> = Vec::new();
    for &q in &SIEVE_PRIMES {
        if (&lc % q).is_zero() {
            continue;
        }
        let residues: Vec<u64> = c.iter().map(|a| mod_u64(a, q)).collect();
        let table: Vec<bool> = (0..q).map(|x| eval_mod(&residues, x, q) == 0).collect();
        if !table.iter().any(|&b| b) {
            return Ok(roots.into_iter().collect());
        }
        if filters.len() < FILTER_PRIMES {
            filters.push((q, table));
        }
    }

    // Cauchy bound on |root|: 1 + max |c_i / lc|.
    let max_ratio = c[..n].iter().map(|a| Rational::new(a.abs(), lc.abs())).max().unwrap_or_else(Rational::zero);
    let bound = max_ratio + Rational::one();

    let lead_divs = divisors(&factorize(&lc, effort)?);
    let const_divs = divisors(&factorize(&c[0], effort)?);
    for b in &lead_divs {
        let b_res: Vec<Option<u64>> = filters.iter().map(|(q, _)| inv_mod(mod_u64(b, *q), *q)).collect();
        for a_abs in &const_divs {
            if !a_abs.gcd(b).is_one() {
                continue;
            }
            if Rational::new(a_abs.clone(), b.clone()) > bound {
                break;
            }
            for a in [a_abs.clone(), -a_abs.clone()] {
                let passes = filters.iter().zip(&b_res).all(|((q, table), binv)| match binv {
                    Some(binv) => table[(mod_u64(&a, *q) * binv % q) as usize],
                    None => true,
                });
                if passes && eval_homogeneous(&c, &a, b).is_zero() {
                    roots.insert(Rational::new(a, b.clone()));
                }
            }
        }
    }
    Ok(roots.into_iter().collect())
}

fn mod_u64(a: &BigInt, q: u64) -> u64 {
    a.mod_floor(&BigInt::from(q)).to_u64().expect("residue fits")
}

fn eval_mod(coeffs: &[u64], x: u64, q: u64) -> u64 {
    coeffs.iter().rev().fold(0, |acc, &c| (acc * x + c) % q)
}

fn inv_mod(a: u64, q: u64) -> Option<u64> {
    if a == 0 {
        return None;
    }
    let e = num_integer::Integer::extended_gcd(&(a as i64), &(q as i64));
    Some(e.x.rem_euclid(q as i64) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    #[test]
    fn small_cases() {
        assert_eq!(rational_roots(&p(&[-1, 0, 1])).unwrap(), vec![int(-1), int(1)]);
        // 2x^3 - 3x^2 - 3x + 2
        assert_eq!(rational_roots(&p(&[2, -3, -3, 2])).unwrap(), vec![int(-1), rat(1, 2), int(2)]);
        assert!(rational_roots(&p(&[2, -2, 0, 1])).unwrap().is_empty());
        assert_eq!(rational_roots(&p(&[0, 0, 3])).unwrap(), vec![int(0)]);
        assert_eq!(rational_roots(&p(&[5])).unwrap(), Vec::<Rational>::new());
        assert_eq!(rational_roots(&UniPoly::zero()), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn rational_coefficients_and_repeated_roots() {
        let f = UniPoly::from_roots(&[rat(3, 7), rat(3, 7), rat(-5, 2), int(11)]).scale(&rat(2, 9));
        assert_eq!(rational_roots(&f).unwrap(), vec![rat(-5, 2), rat(3, 7), int(11)]);
    }

    #[test]
    fn large_constant_term() {
        // Roots with big numerators and denominators exercise the divisor walk.
        let roots = [rat(1_000_003, 97), rat(-123_456, 1_000_033)];
        let f = &UniPoly::from_roots(&roots) * &p(&[2, 0, 1]);
        let mut want = roots.to_vec();
        want.sort();
        assert_eq!(rational_roots(&f).unwrap(), want);
    }

    #[test]
    fn effort_error_names_the_integer() {
        // Leading coefficient is a product of two primes above the trial bound.
        let lc = BigInt::from(1_000_003) * BigInt::from(1_000_033);
        let f = UniPoly::from_bigints(&[BigInt::from(1), BigInt::zero(), BigInt::from(-1), lc.clone()]);
        let starved = FactorEffort { trial_bound: 1000, rho_iterations: 1 };
        match rational_roots_with(&f, &starved) {
            Err(Error::IntegerFactorizationEffortExceeded(n)) => assert_eq!(n, lc),
            // The prefilter may already prove there are no roots.
            Ok(r) => assert!(r.is_empty()),
            Err(e) => panic!("unexpected error {e}"),
        }
    }
}
