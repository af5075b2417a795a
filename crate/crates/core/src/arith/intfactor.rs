//! Integer factorization for the rational-root theorem: trial division,
//! Miller-Rabin, then Pollard-Brent under an iteration cap.

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Budget for one factorization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorEffort {
    /// Trial division runs over primes up to this bound.
    pub trial_bound: u64,
    /// Total Pollard-Brent iterations allowed across all splits.
    pub rho_iterations: u64,
}

impl Default for FactorEffort {
    fn default() -> Self {
        FactorEffort { trial_bound: DEFAULT_TRIAL_BOUND, rho_iterations: 2_000_000 }
    }
}

impl FactorEffort {
    /// Default trial bound with a custom Pollard-Brent cap.
    pub fn with_rounds(rho_iterations: u64) -> Self {
        FactorEffort { rho_iterations, ..Default::default() }
    }
}

const DEFAULT_TRIAL_BOUND: u64 = 1_000_000;

fn sieve(bound: u64) -> Vec<u32> {
    let n = bound as usize;
    let mut is_comp = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !is_comp[i] {
            out.push(i as u32);
            let mut j = i * i;
            while j <= n {
                is_comp[j] = true;
                j += i;
            }
        }
    }
    out
}

fn default_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| sieve(DEFAULT_TRIAL_BOUND))
}

/// Primes up to `bound`, shared for the default bound.
pub fn primes_up_to(bound: u64) -> std::borrow::Cow<'static, [u32]> {
    if bound <= DEFAULT_TRIAL_BOUND {
        let all = default_primes();
        let end = all.partition_point(|&p| u64::from(p) <= bound);
        std::borrow::Cow::Borrowed(&all[..end])
    } else {
        std::borrow::Cow::Owned(sieve(bound))
    }
}

/// Prime factorization of `|n|` as sorted `(prime, exponent)` pairs; empty for
/// `|n| <= 1`.
pub fn factorize(n: &BigInt, effort: &FactorEffort) -> Result<Vec<(BigInt, u32)>> {
    let mut m = n.magnitude().clone();
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    if m <= BigUint::one() {
        return Ok(Vec::new());
    }
    let primes = primes_up_to(effort.trial_bound);
    for &p in primes.iter() {
        let pb = BigUint::from(p);
        if &pb * &pb > m {
            break;
        }
        if (&m % p).is_zero() {
            let mut e = 0;
            while (&m % p).is_zero() {
                m /= p;
                e += 1;
            }
            out.push((pb, e));
        }
    }
    if m > BigUint::one() {
        let bound = BigUint::from(effort.trial_bound);
        if m <= &bound * &bound {
            out.push((m, 1));
        } else {
            let mut budget = effort.rho_iterations;
            let mut stack = vec![m];
            while let Some(c) = stack.pop() {
                if is_probable_prime(&c) {
                    push_factor(&mut out, c);
                    continue;
                }
                match pollard_brent(&c, &mut budget) {
                    Some(d) => {
                        let other = &c / &d;
                        stack.push(d);
                        stack.push(other);
                    }
                    None => return Err(Error::IntegerFactorizationEffortExceeded(n.clone())),
                }
            }
        }
    }
    out.sort();
    Ok(out.into_iter().map(|(p, e)| (BigInt::from_biguint(Sign::Plus, p), e)).collect())
}

fn push_factor(out: &mut Vec<(BigUint, u32)>, p: BigUint) {
    match out.iter_mut().find(|(q, _)| *q == p) {
        Some(entry) => entry.1 += 1,
        None => out.push((p, 1)),
    }
}

/// All positive divisors of an integer with the given factorization, sorted.
pub fn divisors(factors: &[(BigInt, u32)]) -> Vec<BigInt> {
    let mut divs = vec![BigInt::one()];
    for (p, e) in factors {
        let mut next = Vec::with_capacity(divs.len() * (*e as usize + 1));
        for d in &divs {
            let mut q = d.clone();
            for _ in 0..=*e {
                next.push(q.clone());
                q *= p;
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}

const WITNESSES: [u32; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];

/// Miller-Rabin over fixed bases: deterministic below 3.3e24, and a strong
/// probable-prime test beyond.
pub fn is_probable_prime(n: &BigUint) -> bool {
    if n < &BigUint::from(2u32) {
        return false;
    }
    for &w in &WITNESSES {
        if n == &BigUint::from(w) {
            return true;
        }
        if (n % w).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let n1 = n - &one;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    'witness: for &w in &WITNESSES {
        let mut x = BigUint::from(w).modpow(&d, n);
        if x == one || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = &x * &x % n;
            if x == n1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Finds a nontrivial factor of the odd composite `n`, spending from
/// `budget`; `None` once the budget runs out.
fn pollard_brent(n: &BigUint, budget: &mut u64) -> Option<BigUint> {
    if n.is_even() {
        return Some(BigUint::from(2u32));
    }
    if let Some(r) = perfect_square_root(n) {
        return Some(r);
    }
    let one = BigUint::one();
    const BATCH: u64 = 128;
    for c in 1u32.. {
        let c = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut r: u64 = 1;
        let mut q = one.clone();
        let mut g = one.clone();
        let mut x = y.clone();
        let mut ys = y.clone();
        while g == one {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g == one {
                ys = y.clone();
                let steps = BATCH.min(r - k);
                if *budget < steps {
                    return None;
                }
                *budget -= steps;
                for _ in 0..steps {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = q * diff % n;
                }
                g = q.gcd(n);
                k += steps;
            }
            r *= 2;
        }
        if &g == n {
            // The batch overshot; retrace one step at a time.
            loop {
                if *budget == 0 {
                    return None;
                }
                *budget -= 1;
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if g != one {
                    break;
                }
            }
        }
        if &g != n {
            return Some(g);
        }
    }
    unreachable!()
}

fn perfect_square_root(n: &BigUint) -> Option<BigUint> {
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: i128) -> BigInt {
        BigInt::from(n)
    }

    fn product(f: &[(BigInt, u32)]) -> BigInt {
        f.iter().fold(BigInt::one(), |acc, (p, e)| acc * num_traits::pow(p.clone(), *e as usize))
    }

    #[test]
    fn small_factorizations() {
        let e = FactorEffort::default();
        assert!(factorize(&b(1), &e).unwrap().is_empty());
        assert!(factorize(&b(0), &e).unwrap().is_empty());
        assert_eq!(factorize(&b(-360), &e).unwrap(), vec![(b(2), 3), (b(3), 2), (b(5), 1)]);
        let divs = divisors(&factorize(&b(12), &e).unwrap());
        assert_eq!(divs, vec![b(1), b(2), b(3), b(4), b(6), b(12)]);
    }

    #[test]
    fn large_semiprime_needs_rho() {
        // Both factors lie above the trial-division bound.
        let p = b(1_000_003);
        let q = b(1_000_033);
        let r = b(998_244_353);
        let n = &p * &q * &r;
        let f = factorize(&n, &FactorEffort::default()).unwrap();
        assert_eq!(f, vec![(p, 1), (q, 1), (r, 1)]);
        assert_eq!(product(&f), n);
    }

    #[test]
    fn effort_cap_is_reported() {
        let n = b(1_000_003) * b(1_000_033);
        let starved = FactorEffort { trial_bound: 100, rho_iterations: 1 };
        assert_eq!(factorize(&n, &starved), Err(Error::IntegerFactorizationEffortExceeded(n.clone())));
    }

    #[test]
    fn primality() {
        assert!(is_probable_prime(&BigUint::from(998_244_353u64)));
        assert!(!is_probable_prime(&BigUint::from(561u32)));
        assert!(is_probable_prime(&BigUint::from(2u32)));
        // 2^61 - 1
        assert!(is_probable_prime(&BigUint::from((1u64 << 61) - 1)));
    }
}
