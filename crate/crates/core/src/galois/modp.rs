use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::arith::UniPoly;
use crate::perm::CycleType;

/// A polynomial over `F_p`, coefficients lowest degree first, trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModPPoly {
    p: u64,
    coeffs: Vec<u64>,
}

/// What reducing a polynomial modulo a prime gives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reduction {
    /// Factor degrees of the squarefree reduction, decreasing.
    Good(CycleType),
    /// The prime divides a denominator or the leading coefficient, or the
    /// reduction has a repeated factor.
    BadPrime,
}

impl Reduction {
    pub fn cycle_type(&self) -> Option<&CycleType> {
        match self {
            Reduction::Good(t) => Some(t),
            Reduction::BadPrime => None,
        }
    }
}

fn modp(n: &BigInt, p: u64) -> u64 {
    n.mod_floor(&BigInt::from(p)).to_u64().expect("below p")
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

impl ModPPoly {
    /// Reduction of a rational polynomial, or `None` if `p` divides a
    /// denominator.
    pub fn reduce(f: &UniPoly, p: u64) -> Option<Self> {
        assert!(p < 1 << 31, "prime too large for u64 products");
        let mut coeffs = Vec::with_capacity(f.coeffs().len());
        for c in f.coeffs() {
            let d = modp(c.denom(), p);
            if d == 0 {
                return None;
            }
            coeffs.push(modp(c.numer(), p) * inv_mod(d, p) % p);
        }
        Some(Self::new(p, coeffs))
    }

    pub fn new(p: u64, mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        ModPPoly { p, coeffs }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => self.clone(),
            Some(&lc) => {
                let inv = inv_mod(lc, self.p);
                Self::new(self.p, self.coeffs.iter().map(|c| c * inv % self.p).collect())
            }
        }
    }

    fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let p = self.p;
        let c = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = o.coeffs.get(i).copied().unwrap_or(0);
                (a + p - b) % p
            })
            .collect();
        Self::new(p, c)
    }

    fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::new(self.p, vec![]);
        }
        let p = self.p;
        let mut c = vec![0u64; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] = (c[i + j] + a * b) % p;
            }
        }
        Self::new(p, c)
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let p = self.p;
        let dd = d.degree().expect("division by zero polynomial");
        let inv = inv_mod(d.coeffs[dd], p);
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::new(p, vec![]), self.clone());
        }
        let mut q = vec![0u64; r.len() - dd];
        for k in (dd..r.len()).rev() {
            let c = r[k] * inv % p;
            q[k - dd] = c;
            if c != 0 {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    let idx = k - dd + j;
                    r[idx] = (r[idx] + p - c * dc % p) % p;
                }
            }
        }
        r.truncate(dd);
        (Self::new(p, q), Self::new(p, r))
    }

    fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Monic gcd.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        let c = self.coeffs.iter().enumerate().skip(1).map(|(i, c)| (i as u64 % p) * c % p).collect();
        Self::new(p, c)
    }

    /// `self^e mod m`.
    fn pow_rem(&self, mut e: u64, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut acc = Self::new(self.p, vec![1]).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    /// Degrees of the irreducible factors of a squarefree polynomial by
    /// distinct-degree factorization, in decreasing order.
    pub fn factor_degrees(&self) -> Vec<usize> {
        let p = self.p;
        let mut f = self.monic();
        let mut out = Vec::new();
        let x = Self::x(p);
        let mut h = x.clone();
        let mut d = 1;
        while f.degree().is_some_and(|n| n >= 2 * d) {
            h = h.pow_rem(p, &f);
            let g = Self::gcd(&f, &h.sub(&x));
            if let Some(k) = g.degree().filter(|&k| k > 0) {
                out.extend(std::iter::repeat_n(d, k / d));
                f = f.div_rem(&g).0;
                h = h.rem(&f);
            }
            d += 1;
        }
        if let Some(n) = f.degree().filter(|&n| n > 0) {
            out.push(n);
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }
}

/// The Frobenius cycle type of `f` at the prime `p`, or [`Reduction::BadPrime`].
pub fn cycle_type_mod_p(f: &UniPoly, p: u64) -> Reduction {
    let Some(fp) = ModPPoly::reduce(f, p) else {
        return Reduction::BadPrime;
    };
    if fp.degree() != f.degree() || fp.degree().is_none() {
        return Reduction::BadPrime;
    }
    if ModPPoly::gcd(&fp, &fp.derivative()).degree() != Some(0) {
        return Reduction::BadPrime;
    }
    Reduction::Good(fp.factor_degrees())
}
