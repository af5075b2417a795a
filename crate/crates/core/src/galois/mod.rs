//! Empirical Galois groups from Frobenius cycle types.
//!
//! At a prime of good reduction the degrees of the irreducible factors of `f`
//! modulo `p` form the cycle type of a Frobenius element acting on the
//! roots, and by Chebotarev these types are equidistributed over the Galois
//! group. Sampling many primes therefore rules out candidate groups that
//! lack an observed type (with certainty) and ranks the rest by how close
//! their exact cycle-type distribution is to the observed one.

mod modp;

pub use modp::{cycle_type_mod_p, ModPPoly, Reduction};

use std::collections::BTreeMap;

use serde::{Serialize, Serializer};

use crate::arith::intfactor::primes_up_to;
use crate::arith::UniPoly;
use crate::error::{Error, Result};
use crate::perm::{format_cycle_type, CycleType, CycleTypeDistribution, PermGroup};

pub const DEFAULT_PRIME_BUDGET: usize = 300;
pub const DEFAULT_PRIME_BOUND: u64 = 10_000;

/// Observed Frobenius cycle types.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusSample {
    pub distribution: CycleTypeDistribution,
    /// Good primes used, in increasing order.
    pub primes: Vec<u64>,
    /// Primes below the last good prime that were skipped as bad.
    pub skipped: usize,
}

/// Cycle types at the first `budget` good odd primes below `bound`.
pub fn frobenius_sample(f: &UniPoly, budget: usize, bound: u64) -> Result<FrobeniusSample> {
    if f.degree().is_none_or(|d| d == 0) {
        return Err(Error::InvalidArgument("need a polynomial of degree at least 1".into()));
    }
    if !f.is_squarefree() {
        return Err(Error::InvalidArgument("polynomial has a repeated root".into()));
    }
    let mut types = Vec::with_capacity(budget);
    let mut primes = Vec::with_capacity(budget);
    let mut skipped = 0;
    for &p in primes_up_to(bound).iter() {
        if types.len() == budget {
            break;
        }
        let p = p as u64;
        if p == 2 || p >= bound {
            continue;
        }
        match cycle_type_mod_p(f, p) {
            Reduction::Good(t) => {
                types.push(t);
                primes.push(p);
            }
            Reduction::BadPrime => skipped += 1,
        }
    }
    if types.len() < budget {
        return Err(Error::InsufficientGoodPrimes { found: types.len(), wanted: budget, bound });
    }
    Ok(FrobeniusSample { distribution: CycleTypeDistribution::from_types(types), primes, skipped })
}

/// How a candidate group fared against the sample.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CandidateStatus {
    /// Some observed type does not occur in the group.
    EliminatedCertain,
    Consistent,
}

#[derive(Clone, Debug, Serialize)]
pub struct CandidateReport {
    pub label: String,
    pub order: usize,
    pub status: CandidateStatus,
    /// L1 distance between observed and exact cycle-type frequencies.
    pub l1_distance: f64,
    /// Observed types the group does not contain.
    #[serde(serialize_with = "ser_types")]
    pub missing_types: Vec<CycleType>,
}

fn ser_types<S: Serializer>(ts: &[CycleType], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(ts.iter().map(|t| format_cycle_type(t)))
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentificationReport {
    pub sampled_primes: usize,
    pub skipped_primes: usize,
    /// Cycle type to `"count/total"`.
    #[serde(serialize_with = "ser_freqs")]
    pub frequencies: CycleTypeDistribution,
    pub candidates: Vec<CandidateReport>,
    pub best_match: Option<String>,
    pub note: String,
}

fn ser_freqs<S: Serializer>(d: &CycleTypeDistribution, s: S) -> std::result::Result<S::Ok, S::Error> {
    let total = d.total();
    let m: BTreeMap<String, String> = d.0.iter().map(|(t, c)| (format_cycle_type(t), format!("{c}/{total}"))).collect();
    m.serialize(s)
}

impl IdentificationReport {
    pub fn candidate(&self, label: &str) -> Option<&CandidateReport> {
        self.candidates.iter().find(|c| c.label == label)
    }

    pub fn best(&self) -> Option<&CandidateReport> {
        self.best_match.as_deref().and_then(|l| self.candidate(l))
    }
}

/// Compares an observed sample with each candidate's exact distribution.
pub fn compare(sample: &FrobeniusSample, candidates: &[(String, &PermGroup)]) -> IdentificationReport {
    let observed = &sample.distribution;
    let mut reports: Vec<CandidateReport> = candidates
        .iter()
        .map(|(label, g)| {
            let exact = g.cycle_type_distribution();
            let missing: Vec<CycleType> = observed.0.keys().filter(|t| exact.count(t) == 0).cloned().collect();
            CandidateReport {
                label: label.clone(),
                order: g.order(),
                status: if missing.is_empty() {
                    CandidateStatus::Consistent
                } else {
                    CandidateStatus::EliminatedCertain
                },
                l1_distance: observed.l1_distance(&exact),
                missing_types: missing,
            }
        })
        .collect();
    reports.sort_by(|a, b| a.l1_distance.total_cmp(&b.l1_distance).then(a.order.cmp(&b.order)));
    let best = reports.iter().find(|r| r.status == CandidateStatus::Consistent).map(|r| r.label.clone());
    let consistent = reports.iter().filter(|r| r.status == CandidateStatus::Consistent).count();
    let note = match (&best, consistent) {
        (None, _) => "every candidate misses an observed cycle type".to_string(),
        (Some(b), 1) => format!("{b} is the only candidate containing every observed cycle type"),
        (Some(b), k) => format!(
            "{b} has the smallest L1 distance among {k} consistent candidates; sampling never \
             rules out a group containing the true one, so this ranking is advisory"
        ),
    };
    IdentificationReport {
        sampled_primes: sample.primes.len(),
        skipped_primes: sample.skipped,
        frequencies: observed.clone(),
        candidates: reports,
        best_match: best,
        note,
    }
}

/// Samples `budget` good primes below `bound` and ranks the candidates.
pub fn identify(
    f: &UniPoly,
    candidates: &[(String, &PermGroup)],
    budget: usize,
    bound: u64,
) -> Result<IdentificationReport> {
    let n = f.deg();
    if let Some((label, g)) = candidates.iter().find(|(_, g)| g.degree() != n) {
        return Err(Error::InvalidArgument(format!(
            "candidate {label} acts on {} points but the polynomial has degree {n}",
            g.degree()
        )));
    }
    let sample = frobenius_sample(f, budget, bound)?;
    Ok(compare(&sample, candidates))
}
