use std::collections::BTreeSet;

use num_traits::One;
use serde::Serialize;

use super::classifier::{classify_with, ClassifyOptions, Status};
use super::groups::{catalog, GroupSummary};
use super::FamilyId;
use crate::arith::{fmt_rational, rational_roots_with, FactorEffort, Rational};
use crate::dynamics::{dynatomic, orbit, ProjPoint};
use crate::error::{Error, Result};

/// Degrees over Q of the `n`-periodic points of the family member at `v`:
/// the orbit lengths of the classified group, united over candidates.
pub fn periodic_point_degrees(
    family: FamilyId,
    n: usize,
    v: &Rational,
    opts: &ClassifyOptions,
) -> Result<BTreeSet<usize>> {
    let r = classify_with(family, n, v, opts)?;
    Ok(r.groups.iter().flat_map(|g| g.degrees.iter().copied()).collect())
}

/// Density of primes `p` for which the map has no `n`-periodic point over
/// `Q_p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DensityReport {
    pub family: FamilyId,
    pub n: usize,
    #[serde(serialize_with = "ser_q")]
    pub no_root_density: Rational,
    /// True when `no_root_density` is the minimum over several candidates.
    pub lower_bound: bool,
    pub groups: Vec<GroupSummary>,
}

fn ser_q<S: serde::Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_rational(q))
}

fn report(family: FamilyId, n: usize, groups: Vec<GroupSummary>, exact: bool) -> DensityReport {
    let no_root = groups.iter().map(|g| Rational::one() - &g.root_density).min().expect("at least one group");
    DensityReport { family, n, no_root_density: no_root, lower_bound: !exact || groups.len() > 1, groups }
}

/// The no-root density at one parameter: exact for a certified group, a
/// lower bound over the candidates otherwise.
pub fn padic_density(family: FamilyId, n: usize, v: &Rational, opts: &ClassifyOptions) -> Result<DensityReport> {
    let r = classify_with(family, n, v, opts)?;
    let exact = r.status == Status::Certified;
    Ok(report(family, n, r.groups, exact))
}

/// The bound valid for every parameter of the family, taken over all
/// groups that can occur.
pub fn family_density_bound(family: FamilyId, n: usize) -> Result<DensityReport> {
    let cat = catalog(family, n)?;
    let groups = cat.set("P").iter().map(|&i| cat.summary(i)).collect();
    Ok(report(family, n, groups, false))
}

/// Rational points of exact period `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodRow {
    pub n: usize,
    pub points: Vec<ProjPoint>,
}

/// Rational periodic points of periods `1..=n_max` of the family member at
/// `v`, each confirmed by following its orbit.
pub fn rational_periodic_scan(
    family: FamilyId,
    v: &Rational,
    n_max: usize,
    effort: &FactorEffort,
) -> Result<Vec<PeriodRow>> {
    if !(1..=6).contains(&n_max) {
        return Err(Error::InvalidArgument(format!("n_max must be between 1 and 6, got {n_max}")));
    }
    let f = family.map(v)?;
    (1..=n_max)
        .map(|n| {
            let phi = dynatomic(&f, n)?;
            let mut points: Vec<ProjPoint> = rational_roots_with(&phi, effort)?
                .into_iter()
                .map(ProjPoint::Finite)
                .filter(|p| orbit(&f, p, n).is_periodic_with(n))
                .collect();
            if orbit(&f, &ProjPoint::Infinity, n).is_periodic_with(n) {
                points.push(ProjPoint::Infinity);
            }
            points.sort();
            Ok(PeriodRow { n, points })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    #[test]
    fn family_bounds() {
        let b3 = family_density_bound(FamilyId::NoAuto, 3).unwrap();
        assert_eq!(b3.no_root_density, rat(13, 18));
        let b4 = family_density_bound(FamilyId::NoAuto, 4).unwrap();
        assert_eq!(b4.no_root_density, rat(3, 8));
        assert!(b4.lower_bound);
    }

    #[test]
    fn certified_density_is_exact() {
        let opts = ClassifyOptions { prime_budget: 100, ..ClassifyOptions::default() };
        let d = padic_density(FamilyId::NoAuto, 3, &rat(9, 2), &opts).unwrap();
        assert_eq!((d.no_root_density, d.lower_bound), (rat(5, 6), false));
        assert_eq!(periodic_point_degrees(FamilyId::NoAuto, 3, &int(7), &opts).unwrap(), BTreeSet::from([6]));
    }

    #[test]
    fn scan_at_two() {
        let rows = rational_periodic_scan(FamilyId::NoAuto, &int(2), 6, &FactorEffort::default()).unwrap();
        assert!(rows[0].points.is_empty());
        assert_eq!(rows[1].points, vec![ProjPoint::Finite(int(0)), ProjPoint::Infinity]);
        assert!(rows[2..].iter().all(|r| r.points.is_empty()));
        assert!(rational_periodic_scan(FamilyId::NoAuto, &int(2), 7, &FactorEffort::default()).is_err());
    }

    #[test]
    fn scan_sees_the_rational_three_cycle_of_the_auto_map_at_one() {
        let rows = rational_periodic_scan(FamilyId::Auto, &int(1), 3, &FactorEffort::default()).unwrap();
        assert_eq!(rows[2].points, vec![ProjPoint::Finite(int(0)), ProjPoint::Finite(int(1)), ProjPoint::Infinity]);
    }
}
