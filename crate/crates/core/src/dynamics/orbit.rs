use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::MapOverQ;
use crate::arith::{fmt_rational_short, parse_rational, Rational};
use crate::error::{Error, Result};

/// A point of the projective line over Q.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProjPoint {
    Finite(Rational),
    Infinity,
}

impl ProjPoint {
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(ProjPoint::Infinity),
            other => parse_rational(other).map(ProjPoint::Finite),
        }
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjPoint::Finite(q) => f.write_str(&fmt_rational_short(q)),
            ProjPoint::Infinity => f.write_str("inf"),
        }
    }
}

impl Serialize for ProjPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ProjPoint::Finite(q) => s.serialize_str(&crate::arith::fmt_rational(q)),
            ProjPoint::Infinity => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for ProjPoint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        ProjPoint::parse(&s).map_err(|e: Error| serde::de::Error::custom(e))
    }
}

impl MapOverQ {
    /// Image of a point, with poles sent to infinity and infinity resolved by
    /// comparing degrees.
    pub fn apply(&self, p: &ProjPoint) -> ProjPoint {
        match p {
            ProjPoint::Finite(a) => match self.eval(a) {
                Some(b) => ProjPoint::Finite(b),
                None => ProjPoint::Infinity,
            },
            ProjPoint::Infinity => {
                let dn = self.num().deg();
                let dd = self.den().deg();
                if dn > dd {
                    ProjPoint::Infinity
                } else if dn == dd {
                    ProjPoint::Finite(self.num().lc() / self.den().lc())
                } else {
                    ProjPoint::Finite(Rational::zero())
                }
            }
        }
    }
}

/// Forward orbit of a point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitRecord {
    /// Points visited, starting with the initial point, up to (not
    /// including) the first repeat.
    pub points: Vec<ProjPoint>,
    /// Steps before entering the cycle; `None` when no cycle was found.
    pub preperiod: Option<usize>,
    /// Exact cycle length; `None` when no cycle was found.
    pub period: Option<usize>,
    /// True when `max_steps` ran out before a repeat.
    pub exceeded: bool,
}

impl OrbitRecord {
    /// True when the start point itself lies on a cycle of exact length `n`.
    pub fn is_periodic_with(&self, n: usize) -> bool {
        self.preperiod == Some(0) && self.period == Some(n)
    }
}

/// Iterates `f` from `p` until a point repeats or `max_steps` images have
/// been taken.
pub fn orbit(f: &MapOverQ, p: &ProjPoint, max_steps: usize) -> OrbitRecord {
    let mut points = vec![p.clone()];
    let mut current = p.clone();
    for _ in 0..max_steps {
        let next = f.apply(&current);
        if let Some(i) = points.iter().position(|q| *q == next) {
            let period = points.len() - i;
            return OrbitRecord { points, preperiod: Some(i), period: Some(period), exceeded: false };
        }
        points.push(next.clone());
        current = next;
    }
    OrbitRecord { points, preperiod: None, period: None, exceeded: true }
}
