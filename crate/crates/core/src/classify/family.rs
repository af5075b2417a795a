use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::arith::{fmt_rational_short, int, BiPoly, Rational, UniPoly};
use crate::dynamics::{auto_map, dynatomic, no_auto_map, MapOverQ, MapOverQt};
use crate::error::{Error, Result};

/// The two one-parameter families of quadratic maps with a 2-periodic
/// critical point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyId {
    /// `v (x - 1) / x^2`, trivial automorphism group.
    NoAuto,
    /// `(2x - 1) / (v x^2 - 1)`, nontrivial automorphism group.
    Auto,
}

impl FamilyId {
    pub const ALL: [FamilyId; 2] = [FamilyId::NoAuto, FamilyId::Auto];

    pub fn name(self) -> &'static str {
        match self {
            FamilyId::NoAuto => "no-auto",
            FamilyId::Auto => "auto",
        }
    }

    /// Parameters for which the map degenerates.
    pub fn excluded(self) -> Vec<Rational> {
        match self {
            FamilyId::NoAuto => vec![int(0)],
            FamilyId::Auto => vec![int(0), int(4)],
        }
    }

    pub fn check(self, v: &Rational) -> Result<()> {
        if self.excluded().contains(v) {
            return Err(Error::ExcludedParameter { family: self.name().to_string(), v: fmt_rational_short(v) });
        }
        Ok(())
    }

    /// The family member at `v`.
    pub fn map(self, v: &Rational) -> Result<MapOverQ> {
        self.check(v)?;
        match self {
            FamilyId::NoAuto => no_auto_map(v),
            FamilyId::Auto => auto_map(v),
        }
    }

    /// The generic member over Q(t).
    pub fn generic_map(self) -> MapOverQt {
        let src = match self {
            FamilyId::NoAuto => "t(x-1)/x^2",
            FamilyId::Auto => "(2x-1)/(t x^2-1)",
        };
        MapOverQt::parse(src).expect("valid family map")
    }

    /// `Phi_n(t, x)` of the generic member, for `n <= 4` computed once.
    pub fn generic_dynatomic(self, n: usize) -> Result<BiPoly> {
        static CACHE: OnceLock<Vec<BiPoly>> = OnceLock::new();
        if !(1..=4).contains(&n) {
            return dynatomic(&self.generic_map(), n);
        }
        let all = CACHE.get_or_init(|| {
            FamilyId::ALL
                .iter()
                .flat_map(|f| (1..=4).map(move |k| dynatomic(&f.generic_map(), k).expect("generic")))
                .collect()
        });
        let idx = match self {
            FamilyId::NoAuto => 0,
            FamilyId::Auto => 4,
        };
        Ok(all[idx + n - 1].clone())
    }

    /// `Phi_n(v, x)`: the generic dynatomic polynomial specialized at `v`.
    pub fn dynatomic_at(self, n: usize, v: &Rational) -> Result<UniPoly> {
        self.check(v)?;
        let phi = self.generic_dynatomic(n)?.eval_t(v);
        if phi.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(phi)
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "no-auto" | "noauto" | "phi" => Ok(FamilyId::NoAuto),
            "auto" | "psi" => Ok(FamilyId::Auto),
            other => Err(Error::InvalidArgument(format!("unknown family {other:?}; expected no-auto or auto"))),
        }
    }
}
