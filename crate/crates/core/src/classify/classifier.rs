use serde::Serialize;

use super::groups::{catalog, GroupCatalog, GroupSummary};
use super::{degenerate_parameters, resolvents_for, FamilyId, ParamId, Parametrization, RootTest};
use crate::arith::{fmt_rational_short, int, rat, FactorEffort, Rational, UniPoly};
use crate::error::Result;
use crate::galois::{identify, CandidateStatus, IdentificationReport, DEFAULT_PRIME_BOUND, DEFAULT_PRIME_BUDGET};
use crate::perm::PermGroup;

/// How much a classification is backed by theory.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    /// A theorem branch pins the group down.
    Certified,
    /// A theorem branch limits the group to a list, refined by sampling.
    CandidateSet,
    /// A parameter where specialization proves nothing; the answer rests on
    /// sampling and any conclusive resolvent tests.
    Heuristic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ClassifyOptions {
    pub prime_budget: usize,
    pub prime_bound: u64,
    pub effort: FactorEffort,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            prime_budget: DEFAULT_PRIME_BUDGET,
            prime_bound: DEFAULT_PRIME_BOUND,
            effort: FactorEffort::default(),
        }
    }
}

/// One image-membership test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Membership {
    pub map: ParamId,
    pub formula: String,
    pub contains: bool,
    /// A rational `t` with `map(t) = v`.
    pub preimage: Option<String>,
}

/// One resolvent root test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResolventCheck {
    pub group: &'static str,
    #[serde(flatten)]
    pub outcome: RootTest,
}

#[derive(Clone, Debug, Serialize)]
pub struct Evidence {
    /// The decision-tree branch taken.
    pub branch: String,
    pub memberships: Vec<Membership>,
    pub resolvents: Vec<ResolventCheck>,
    pub identification: Option<IdentificationReport>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationResult {
    pub family: FamilyId,
    pub n: usize,
    #[serde(with = "crate::arith::serde_rational")]
    pub v: Rational,
    pub status: Status,
    /// The group (certified) or the surviving candidates.
    pub groups: Vec<GroupSummary>,
    pub best_match: Option<String>,
    pub evidence: Evidence,
}

impl ClassificationResult {
    pub fn labels(&self) -> Vec<&str> {
        self.groups.iter().map(|g| g.label.as_str()).collect()
    }
}

/// The polynomial whose roots are the `n`-periodic points of the family
/// member at `v`. When `infinity` is itself `n`-periodic the specialized
/// dynatomic polynomial loses degree; it is then padded with linear factors
/// at small integers that are not roots, which keeps the Galois action and
/// the cycle types on the full set of periodic points.
pub fn periodic_polynomial(family: FamilyId, n: usize, v: &Rational) -> Result<(UniPoly, usize)> {
    let phi = family.dynatomic_at(n, v)?;
    let generic = family.generic_dynatomic(n)?.degree_x().unwrap_or(0);
    let missing = generic.saturating_sub(phi.deg());
    let mut f = phi;
    let mut c = 0i64;
    for _ in 0..missing {
        while f.eval(&int(c)) == int(0) {
            c += 1;
        }
        f = &f * &UniPoly::from_ints(&[-c, 1]);
        c += 1;
    }
    Ok((f, missing))
}

struct Decision {
    status: Status,
    classes: Vec<usize>,
    branch: String,
}

struct Ctx<'a> {
    v: &'a Rational,
    opts: &'a ClassifyOptions,
    memberships: Vec<Membership>,
}

impl Ctx<'_> {
    fn member(&mut self, id: ParamId) -> Result<bool> {
        let p = Parametrization::get(id);
        let pre = p.preimage(self.v, &self.opts.effort)?;
        let contains = pre.is_some();
        self.memberships.push(Membership {
            map: id,
            formula: p.display(),
            contains,
            preimage: pre.map(|t| fmt_rational_short(&t)),
        });
        Ok(contains)
    }
}

fn one(cat: &GroupCatalog, label: &str) -> Vec<usize> {
    cat.classes_of(&[label]).expect("catalog label")
}

fn some(cat: &GroupCatalog, labels: &[&str]) -> Vec<usize> {
    cat.classes_of(labels).expect("catalog labels")
}

fn intersect(sets: Vec<Vec<usize>>) -> Vec<usize> {
    let mut it = sets.into_iter();
    let first = it.next().unwrap_or_default();
    it.fold(first, |acc, s| acc.into_iter().filter(|i| s.contains(i)).collect())
}

fn decide(cat: &GroupCatalog, family: FamilyId, n: usize, ctx: &mut Ctx) -> Result<Decision> {
    let v = ctx.v;
    let d = |status, classes, branch: &str| Decision { status, classes, branch: branch.to_string() };
    Ok(match (family, n) {
        (FamilyId::NoAuto, 3) => {
            if *v == int(3) {
                d(Status::Heuristic, cat.all_classes(), "v = 3: resolvent discriminants vanish")
            } else if ctx.member(ParamId::Eta)? {
                d(Status::Certified, one(cat, "C"), "v lies in the image of eta")
            } else {
                d(Status::Certified, one(cat, "W"), "v lies outside the image of eta")
            }
        }
        (FamilyId::Auto, 3) => {
            if *v == int(1) {
                d(Status::Heuristic, cat.all_classes(), "v = 1: discriminants vanish")
            } else if ctx.member(ParamId::Mu3)? {
                d(Status::Certified, one(cat, "M"), "v lies in the image of mu")
            } else if ctx.member(ParamId::Kappa)? {
                d(Status::Certified, one(cat, "K"), "v lies in the image of kappa")
            } else {
                let in_a = ctx.member(ParamId::Alpha3)?;
                let in_b = ctx.member(ParamId::Beta3)?;
                let mut sets = Vec::new();
                if in_a {
                    sets.push(some(cat, &["A", "K", "M"]));
                }
                if in_b {
                    sets.push(some(cat, &["B", "M"]));
                }
                match (in_a, in_b) {
                    (false, false) => {
                        d(Status::Certified, one(cat, "W"), "v lies outside the images of alpha and beta")
                    }
                    (true, false) => d(Status::CandidateSet, intersect(sets), "v lies in the image of alpha"),
                    (false, true) => d(Status::CandidateSet, intersect(sets), "v lies in the image of beta"),
                    (true, true) => d(Status::CandidateSet, intersect(sets), "v lies in the images of alpha and beta"),
                }
            }
        }
        (FamilyId::Auto, 4) => {
            if *v == rat(3, 2) {
                d(Status::Heuristic, cat.all_classes(), "v = 3/2: resolvent discriminants vanish")
            } else if ctx.member(ParamId::Iota)? {
                d(Status::Certified, one(cat, "I"), "v lies in the image of iota")
            } else if ctx.member(ParamId::Mu4)? {
                d(Status::Certified, one(cat, "I"), "v lies in the image of mu (M and I are conjugate in S_12)")
            } else {
                let mut sets = Vec::new();
                let mut hit = Vec::new();
                for (id, label) in [(ParamId::Alpha4, "A"), (ParamId::Beta4, "B"), (ParamId::Delta, "D")] {
                    if ctx.member(id)? {
                        sets.push(some(cat, &[label, "I"]));
                        hit.push(id.name());
                    }
                }
                if sets.is_empty() {
                    d(Status::Certified, one(cat, "V"), "v lies outside the images of alpha, beta and delta")
                } else {
                    let branch = format!("v lies in the image of {}", hit.join(" and "));
                    d(Status::CandidateSet, intersect(sets), &branch)
                }
            }
        }
        (FamilyId::NoAuto, 4) => {
            let delta = [int(1), rat(3, 2), rat(8, 3), rat(11, 2)];
            let p = cat.set("P").to_vec();
            if delta.contains(v) {
                d(Status::Heuristic, p, "v lies in the degenerate set {1, 3/2, 8/3, 11/2}")
            } else {
                d(Status::CandidateSet, p, "v avoids the degenerate set: the group is one of the 26 possible groups")
            }
        }
        _ => unreachable!("catalog exists only for n = 3, 4"),
    })
}

/// Classifies the `n`-th dynatomic Galois group of the family member at
/// `v` with the default sampling budget.
pub fn classify(family: FamilyId, n: usize, v: &Rational) -> Result<ClassificationResult> {
    classify_with(family, n, v, &ClassifyOptions::default())
}

pub fn classify_with(family: FamilyId, n: usize, v: &Rational, opts: &ClassifyOptions) -> Result<ClassificationResult> {
    family.check(v)?;
    let cat = catalog(family, n)?;
    let mut ctx = Ctx { v, opts, memberships: Vec::new() };
    let decision = decide(cat, family, n, &mut ctx)?;
    let mut notes = Vec::new();

    // Conclusive resolvent tests refine candidate lists: a rational root puts
    // the group inside H, its absence keeps the group out of every subgroup
    // of H.
    let degenerate = degenerate_parameters(family, n)?.contains(v);
    let mut resolvents = Vec::new();
    let mut classes = decision.classes.clone();
    for e in resolvents_for(family, n) {
        let outcome = e.test_with(v, &opts.effort)?;
        let h = cat.class(e.label).expect("resolvent labels are catalog labels");
        if decision.status != Status::Certified && !degenerate {
            let lat = cat.lattice();
            match outcome {
                RootTest::Contained { .. } => classes.retain(|&i| lat.contained(i, h)),
                RootTest::NotContained => classes.retain(|&i| !lat.contained(i, h)),
                RootTest::Inconclusive => {}
            }
        }
        resolvents.push(ResolventCheck { group: e.label, outcome });
    }
    if degenerate && !resolvents.is_empty() {
        notes.push("v is a degenerate parameter, so resolvent outcomes are reported but not used".to_string());
    }
    if classes.is_empty() {
        notes.push("resolvent tests excluded every candidate; keeping the unrefined list".to_string());
        classes = decision.classes.clone();
    }

    let (f, padded) = periodic_polynomial(family, n, v)?;
    if padded > 0 {
        notes.push(format!(
            "infinity is {n}-periodic; the polynomial was padded with {padded} rational linear factor(s)"
        ));
    }
    let pool: Vec<usize> = match decision.status {
        Status::Certified => {
            let mut p = cat.set("P").to_vec();
            for &c in &classes {
                if !p.contains(&c) {
                    p.push(c);
                }
            }
            p
        }
        _ => classes.clone(),
    };
    let owned = cat.candidates(&pool);
    let refs: Vec<(String, &PermGroup)> = owned.iter().map(|(l, g)| (l.clone(), g)).collect();
    let report = identify(&f, &refs, opts.prime_budget, opts.prime_bound)?;

    let consistent = |i: usize| report.candidate(&cat.name(i)).is_some_and(|c| c.status == CandidateStatus::Consistent);
    let (survivors, best_match) = match decision.status {
        Status::Certified => {
            if classes.iter().any(|&i| !consistent(i)) {
                notes.push("sampling observed a cycle type outside the certified group".to_string());
            }
            (classes.clone(), Some(cat.name(classes[0])))
        }
        _ => {
            let kept: Vec<usize> = classes.iter().copied().filter(|&i| consistent(i)).collect();
            if kept.is_empty() {
                notes.push("sampling eliminated every candidate; listing them unrefined".to_string());
                (classes.clone(), None)
            } else {
                let best = report.best_match.clone();
                if kept.len() == 1 {
                    notes.push(format!("{} is the only candidate consistent with sampling", cat.name(kept[0])));
                }
                (kept, best)
            }
        }
    };

    Ok(ClassificationResult {
        family,
        n,
        v: v.clone(),
        status: decision.status,
        groups: survivors.iter().map(|&i| cat.summary(i)).collect(),
        best_match,
        evidence: Evidence {
            branch: decision.branch,
            memberships: ctx.memberships,
            resolvents,
            identification: Some(report),
            notes,
        },
    })
}
