use std::sync::OnceLock;

use serde::Serialize;

use super::FamilyId;
use crate::arith::{
    discriminant_x, fmt_rational_short, rational_roots, rational_roots_with, BiPoly, FactorEffort, Rational, UniPoly,
};
use crate::error::Result;

/// A defining polynomial `q_H(t, x)` for the fixed field of a subgroup `H`.
#[derive(Clone, Debug)]
pub struct ResolventEntry {
    pub family: FamilyId,
    pub n: usize,
    pub label: &'static str,
    pub q: BiPoly,
    bad: OnceLock<Vec<Rational>>,
}

/// Outcome of specializing a resolvent at a parameter.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum RootTest {
    /// `q_H(v, x)` has the rational root `root`: the group lies in a conjugate of `H`.
    Contained {
        #[serde(serialize_with = "ser_q")]
        root: Rational,
    },
    NotContained,
    /// `v` is a root of `lc * disc` of `q_H`, where the test proves nothing.
    Inconclusive,
}

fn ser_q<S: serde::Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_rational_short(q))
}

impl ResolventEntry {
    fn new(family: FamilyId, n: usize, label: &'static str, q: BiPoly) -> Self {
        ResolventEntry { family, n, label, q, bad: OnceLock::new() }
    }

    /// Rational roots of `lc_x(q) * disc_x(q)`.
    pub fn bad_parameters(&self) -> &[Rational] {
        self.bad.get_or_init(|| {
            let gate = &self.q.lc_x() * &discriminant_x(&self.q).expect("resolvents have degree >= 2");
            rational_roots(&gate).expect("catalog gates factor within the default effort")
        })
    }

    pub fn test(&self, v: &Rational) -> Result<RootTest> {
        self.test_with(v, &FactorEffort::default())
    }

    pub fn test_with(&self, v: &Rational, effort: &FactorEffort) -> Result<RootTest> {
        if self.bad_parameters().contains(v) {
            return Ok(RootTest::Inconclusive);
        }
        let qv = self.q.eval_t(v);
        Ok(match rational_roots_with(&qv, effort)?.into_iter().next() {
            Some(root) => RootTest::Contained { root },
            None => RootTest::NotContained,
        })
    }
}

/// Whether `q_H(v, x)` has a rational root, gated on the bad parameters.
pub fn resolvent_root_test(e: &ResolventEntry, v: &Rational) -> Result<RootTest> {
    e.test(v)
}

fn parse(s: &str) -> BiPoly {
    BiPoly::parse(s).expect("catalog polynomial parses")
}

fn build() -> Vec<ResolventEntry> {
    use FamilyId::*;
    let sq = |g: &str, f: &str| {
        let g = UniPoly::parse(g, 't').expect("catalog");
        let f = UniPoly::parse(f, 't').expect("catalog");
        let c = &g * &f.pow(2);
        // x^2 - g f^2
        BiPoly::from_x_coeffs(vec![-c, UniPoly::zero(), UniPoly::one()])
    };
    vec![
        ResolventEntry::new(NoAuto, 3, "A", parse("x^2 + (2t^2 - 6t + 12)x + t^4 - 6t^3 + 24t^2 - 36t + 36")),
        ResolventEntry::new(
            NoAuto,
            3,
            "B",
            parse(
                "x^3 + (8t^2 - 18t)x^2 + (20t^4 - 84t^3 + 72t^2)x \
                 + 16t^6 - 96t^5 + 168t^4 - 144t^3 + 216t^2",
            ),
        ),
        ResolventEntry::new(
            NoAuto,
            3,
            "C",
            parse(
                "x^3 + (8t^2 - 18t)x^2 + (20t^4 - 84t^3 + 72t^2)x \
                 + 16t^6 - 96t^5 + 160t^4 - 72t^3",
            ),
        ),
        ResolventEntry::new(Auto, 3, "A", parse("x^2 + 9t^3 x + 27t^6 - 27t^5")),
        ResolventEntry::new(
            Auto,
            3,
            "B",
            parse(
                "x^3 + (-18t^7 + 117t^6 + 144t^5)x^2 \
                 + (-324t^13 - 729t^12 + 15552t^11 + 5184t^10)x \
                 + 216t^22 - 3240t^21 + 18792t^20 - 54378t^19 + 59859t^18 \
                 - 16848t^17 + 527040t^16",
            ),
        ),
        ResolventEntry::new(Auto, 4, "A", sq("3t(4 - t)", "3t^16 (t - 4)(t^2 - 3t + 1)(t^3 - 2t^2 + 18t - 54)")),
        ResolventEntry::new(Auto, 4, "B", sq("15t(4 - t)", "9t^22 (t - 4)^2 (t^2 - 3t + 1)(t^3 - 2t^2 + 18t - 54)")),
        ResolventEntry::new(Auto, 4, "C", parse("x^2 + (15t^7 - 30t^6)x + 45t^14 - 135t^13 + 45t^12")),
    ]
}

/// Every printed resolvent.
pub fn resolvents() -> &'static [ResolventEntry] {
    static CATALOG: OnceLock<Vec<ResolventEntry>> = OnceLock::new();
    CATALOG.get_or_init(build)
}

pub fn resolvents_for(family: FamilyId, n: usize) -> impl Iterator<Item = &'static ResolventEntry> {
    resolvents().iter().filter(move |e| e.family == family && e.n == n)
}

pub fn resolvent(family: FamilyId, n: usize, label: &str) -> Option<&'static ResolventEntry> {
    resolvents_for(family, n).find(|e| e.label == label)
}

/// Parameters where specialization theory gives no information: rational
/// roots of `lc * disc` of `Phi_n` and of every printed resolvent.
pub fn degenerate_parameters(family: FamilyId, n: usize) -> Result<Vec<Rational>> {
    let phi = family.generic_dynatomic(n)?;
    let gate = &phi.lc_x() * &discriminant_x(&phi)?;
    let mut out = rational_roots(&gate)?;
    for e in resolvents_for(family, n) {
        out.extend(e.bad_parameters().iter().cloned());
    }
    out.sort();
    out.dedup();
    Ok(out)
}
