use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A permutation of `{1, ..., n}`, stored 0-based.
///
/// Products read left to right: `a.then(b)` maps `i` to `b(a(i))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u16>,
}

/// Cycle lengths in decreasing order, fixed points included as 1s.
pub type CycleType = Vec<usize>;

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n as u16).collect() }
    }

    /// From 0-based images; panics if they do not form a bijection.
    pub fn from_images0(images: Vec<u16>) -> Self {
        debug_assert!(is_bijection(&images));
        Permutation { images }
    }

    /// From 1-based images, as in `[2, 3, 1]` for the 3-cycle `(1,2,3)`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let v: Vec<u16> = images
            .iter()
            .map(|&i| {
                if i == 0 || i > images.len() {
                    Err(Error::Parse(format!("image {i} out of range 1..={}", images.len())))
                } else {
                    Ok((i - 1) as u16)
                }
            })
            .collect::<Result<_>>()?;
        if !is_bijection(&v) {
            return Err(Error::Parse(format!("{images:?} is not a bijection")));
        }
        Ok(Permutation { images: v })
    }

    /// Parses cycle notation such as `"(1,2,3)(4,5,6)"` on `n` points; `"()"`
    /// is the identity.
    pub fn from_cycles(n: usize, s: &str) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("{what} in cycle notation {s:?}"));
        let mut images: Vec<u16> = (0..n as u16).collect();
        let mut seen = vec![false; n];
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let inner_end = rest.find(')').ok_or_else(|| bad("unclosed cycle"))?;
            let inner = rest.strip_prefix('(').ok_or_else(|| bad("expected '('"))?;
            let body = &inner[..inner_end - 1];
            rest = &rest[inner_end + 1..];
            if body.is_empty() {
                continue;
            }
            let pts: Vec<usize> =
                body.split(',').map(|p| p.parse::<usize>().map_err(|_| bad("bad point"))).collect::<Result<_>>()?;
            for &p in &pts {
                if p == 0 || p > n {
                    return Err(bad(&format!("point {p} outside 1..={n}")));
                }
                if seen[p - 1] {
                    return Err(bad(&format!("point {p} repeated")));
                }
                seen[p - 1] = true;
            }
            for k in 0..pts.len() {
                images[pts[k] - 1] = (pts[(k + 1) % pts.len()] - 1) as u16;
            }
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// 0-based image of the 0-based point `i`.
    pub fn image(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn images0(&self) -> &[u16] {
        &self.images
    }

    /// 1-based image array.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i as usize + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation { images: self.images.iter().map(|&i| other.images[i as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u16; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u16;
        }
        Permutation { images: inv }
    }

    /// `g^-1 self g`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        g.inverse().then(self).then(g)
    }

    pub fn pow(&self, k: usize) -> Permutation {
        (0..k).fold(Permutation::identity(self.degree()), |acc, _| acc.then(self))
    }

    /// Cycles of length at least 2, each starting at its least point
    /// (0-based), ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut j = self.images[start] as usize;
            while j != start {
                seen[j] = true;
                cycle.push(j);
                j = self.images[j] as usize;
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    pub fn cycle_type(&self) -> CycleType {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut lens = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                len += 1;
                j = self.images[j] as usize;
            }
            lens.push(len);
        }
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }

    pub fn order(&self) -> usize {
        self.cycle_type().into_iter().fold(1, num_integer::lcm)
    }

    pub fn fixed_points(&self) -> usize {
        self.images.iter().enumerate().filter(|(i, &j)| *i == j as usize).count()
    }
}

fn is_bijection(images: &[u16]) -> bool {
    let mut seen = vec![false; images.len()];
    for &i in images {
        let i = i as usize;
        if i >= images.len() || seen[i] {
            return false;
        }
        seen[i] = true;
    }
    true
}

/// Cycle type in exponent notation, such as `[3,1^3]`.
pub fn format_cycle_type(ct: &[usize]) -> String {
    let mut parts = Vec::new();
    let mut i = 0;
    while i < ct.len() {
        let mut j = i;
        while j < ct.len() && ct[j] == ct[i] {
            j += 1;
        }
        let k = j - i;
        parts.push(if k == 1 { ct[i].to_string() } else { format!("{}^{}", ct[i], k) });
        i = j;
    }
    format!("[{}]", parts.join(","))
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let pts: Vec<String> = c.iter().map(|p| (p + 1).to_string()).collect();
            write!(f, "({})", pts.join(","))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.images().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        Permutation::from_images(&v).map_err(serde::de::Error::custom)
    }
}
