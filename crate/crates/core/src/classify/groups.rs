use std::cell::OnceCell;
use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use serde::Serialize;

use super::FamilyId;
use crate::arith::{fmt_rational, Rational};
use crate::error::{Error, Result};
use crate::perm::{fingerprint, generate, GroupFingerprint, PermGroup, Permutation, SubgroupLattice};

/// The generic dynatomic group of a family together with its named
/// subgroup classes.
pub struct GroupCatalog {
    pub family: FamilyId,
    pub n: usize,
    lattice: &'static SubgroupLattice,
    labels: Vec<(String, usize)>,
    sets: BTreeMap<&'static str, Vec<usize>>,
}

/// Order, point degrees and root density of one group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupSummary {
    pub label: String,
    pub order: usize,
    pub degrees: BTreeSet<usize>,
    #[serde(serialize_with = "ser_q")]
    pub root_density: Rational,
}

fn ser_q<S: serde::Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_rational(q))
}

impl GroupSummary {
    pub fn of(label: &str, g: &PermGroup) -> Self {
        GroupSummary {
            label: label.to_string(),
            order: g.order(),
            degrees: g.point_degrees(),
            root_density: g.root_density(),
        }
    }
}

impl GroupCatalog {
    pub fn lattice(&self) -> &SubgroupLattice {
        self.lattice
    }

    /// Named classes in catalog order.
    pub fn labels(&self) -> impl Iterator<Item = (&str, usize)> {
        self.labels.iter().map(|(l, i)| (l.as_str(), *i))
    }

    pub fn class(&self, label: &str) -> Option<usize> {
        self.labels.iter().find(|(l, _)| l == label).map(|&(_, i)| i)
    }

    pub fn group(&self, label: &str) -> Option<PermGroup> {
        self.class(label).map(|i| self.lattice.representative(i))
    }

    /// The label of a class, or `class-<index>` for an unnamed one. When a
    /// class carries several labels the first is used.
    pub fn name(&self, class: usize) -> String {
        self.labels
            .iter()
            .find(|&&(_, i)| i == class)
            .map(|(l, _)| l.clone())
            .unwrap_or_else(|| format!("class-{class}"))
    }

    /// Every label attached to a class.
    pub fn aliases(&self, class: usize) -> Vec<&str> {
        self.labels.iter().filter(|&&(_, i)| i == class).map(|(l, _)| l.as_str()).collect()
    }

    /// A named set of classes (`P` for the possible groups, and for the
    /// no-auto family at n = 4 also `F`, `R`, `U`).
    pub fn set(&self, name: &str) -> &[usize] {
        self.sets.get(name).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Classes by label, in the given order.
    pub fn classes_of(&self, labels: &[&str]) -> Result<Vec<usize>> {
        labels
            .iter()
            .map(|l| self.class(l).ok_or_else(|| Error::InvalidArgument(format!("unknown group label {l}"))))
            .collect()
    }

    pub fn all_classes(&self) -> Vec<usize> {
        (0..self.lattice.len()).collect()
    }

    /// `(name, representative)` pairs for identification.
    pub fn candidates(&self, classes: &[usize]) -> Vec<(String, PermGroup)> {
        classes.iter().map(|&i| (self.name(i), self.lattice.representative(i))).collect()
    }

    pub fn summary(&self, class: usize) -> GroupSummary {
        GroupSummary::of(&self.name(class), &self.lattice.representative(class))
    }

    /// Looks up a label, also accepting `class-<index>`.
    pub fn resolve(&self, label: &str) -> Result<usize> {
        if let Some(i) = self.class(label) {
            return Ok(i);
        }
        label
            .strip_prefix("class-")
            .and_then(|s| s.parse::<usize>().ok())
            .filter(|&i| i < self.lattice.len())
            .ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "unknown group label {label} for the {} family at n = {}",
                    self.family, self.n
                ))
            })
    }
}

fn perm(n: usize, s: &str) -> Permutation {
    Permutation::from_cycles(n, s).expect("catalog permutation")
}

fn gen(n: usize, cycles: &[&str]) -> PermGroup {
    let gens: Vec<Permutation> = cycles.iter().map(|s| perm(n, s)).collect();
    generate(&gens).expect("catalog group")
}

/// `(Z/3) wr S_2`, the centralizer of `(1,2,3)(4,5,6)` in `S_6`.
pub fn wreath_3_2() -> PermGroup {
    gen(6, &["(1,2,3)", "(4,5,6)", "(1,4)(2,5)(3,6)"])
}

/// `(Z/4) wr S_3`, the centralizer of `(1,2,3,4)(5,6,7,8)(9,10,11,12)` in `S_12`.
pub fn wreath_4_3() -> PermGroup {
    gen(12, &["(1,2,3,4)", "(1,5,9)(2,6,10)(3,7,11)(4,8,12)", "(1,5)(2,6)(3,7)(4,8)"])
}

fn lattice_w18() -> &'static SubgroupLattice {
    static L: OnceLock<SubgroupLattice> = OnceLock::new();
    L.get_or_init(|| SubgroupLattice::new(&wreath_3_2()).expect("lattice of order 18"))
}

fn lattice_w384() -> &'static SubgroupLattice {
    static L: OnceLock<SubgroupLattice> = OnceLock::new();
    L.get_or_init(|| SubgroupLattice::new(&wreath_4_3()).expect("lattice of order 384"))
}

/// The lattice of `(Z/4) x S_3` as embedded in the wreath product.
fn lattice_v() -> Result<&'static SubgroupLattice> {
    static L: OnceLock<Result<SubgroupLattice>> = OnceLock::new();
    L.get_or_init(|| {
        let w = lattice_w384();
        SubgroupLattice::new(&w.representative(class_v(w)?))
    })
    .as_ref()
    .map_err(Clone::clone)
}

/// Lazily computed fingerprints of every class representative.
struct Prints<'a> {
    lattice: &'a SubgroupLattice,
    cache: Vec<OnceCell<GroupFingerprint>>,
}

impl<'a> Prints<'a> {
    fn new(lattice: &'a SubgroupLattice) -> Self {
        Prints { lattice, cache: (0..lattice.len()).map(|_| OnceCell::new()).collect() }
    }

    fn get(&self, i: usize) -> &GroupFingerprint {
        self.cache[i].get_or_init(|| fingerprint(&self.lattice.representative(i)))
    }

    /// The unique class among `among` satisfying `pred`.
    fn pick(&self, label: &str, among: &[usize], pred: impl Fn(&GroupFingerprint) -> bool) -> Result<usize> {
        let hits: Vec<usize> = among.iter().copied().filter(|&i| pred(self.get(i))).collect();
        match hits.as_slice() {
            [i] => Ok(*i),
            _ => Err(Error::AmbiguousLabel { label: label.to_string(), count: hits.len() }),
        }
    }
}

/// Order, element-order histogram, abelian invariants and center order.
fn sig(fp: &GroupFingerprint, order: usize, orders: &[(usize, usize)], ab: &[usize], z: usize) -> bool {
    fp.order == order
        && fp.element_orders == orders.iter().copied().collect::<BTreeMap<_, _>>()
        && fp.abelian_invariants == ab
        && fp.center_order == z
}

fn shape(fp: &GroupFingerprint, name: &str) -> bool {
    fp.shapes.get(name).copied().unwrap_or(false)
}

fn labels_no_auto_3(lat: &SubgroupLattice) -> Result<Vec<(String, usize)>> {
    let class = |label: &str, cycles: &[&str]| -> Result<(String, usize)> {
        let i = lat
            .class_of(&gen(6, cycles))
            .ok_or_else(|| Error::AmbiguousLabel { label: label.to_string(), count: 0 })?;
        Ok((label.to_string(), i))
    };
    Ok(vec![
        ("W".to_string(), lat.top()),
        class("A", &["(1,2,3)", "(1,2,3)(4,5,6)"])?,
        class("B", &["(1,5,2,6,3,4)", "(1,2,3)(4,5,6)"])?,
        class("C", &["(1,6)(2,4)(3,5)", "(1,2,3)(4,6,5)"])?,
        class("H", &["(1,6)(2,4)(3,5)"])?,
        class("J", &["(1,2,3)(4,6,5)"])?,
    ])
}

fn labels_auto_3(lat: &SubgroupLattice) -> Result<Vec<(String, usize)>> {
    let fp = Prints::new(lat);
    let max = lat.maximal_classes();
    let a = fp.pick("A", &max, |f| f.order == 9)?;
    let b = fp.pick("B", &max, |f| f.order == 6 && f.is_cyclic)?;
    let c = fp.pick("C", &max, |f| f.order == 6 && !f.is_cyclic)?;
    let below_a = lat.maximal_subclasses(a);
    let j = unique("J", below_a.iter().copied().filter(|&i| lat.contained(i, c)))?;
    let m = unique("M", below_a.iter().copied().filter(|&i| lat.contained(i, b)))?;
    let k = unique("K", below_a.iter().copied().filter(|&i| i != j && i != m))?;
    let all: Vec<usize> = (0..lat.len()).collect();
    let h = fp.pick("H", &all, |f| f.order == 2)?;
    Ok(vec![
        ("W".to_string(), lat.top()),
        ("A".to_string(), a),
        ("B".to_string(), b),
        ("C".to_string(), c),
        ("H".to_string(), h),
        ("J".to_string(), j),
        ("K".to_string(), k),
        ("M".to_string(), m),
    ])
}

fn unique(label: &str, it: impl Iterator<Item = usize>) -> Result<usize> {
    let hits: Vec<usize> = it.collect();
    match hits.as_slice() {
        [i] => Ok(*i),
        _ => Err(Error::AmbiguousLabel { label: label.to_string(), count: hits.len() }),
    }
}

/// The class of `(Z/4) x S_3` inside the 12-point wreath product.
fn class_v(w: &SubgroupLattice) -> Result<usize> {
    let fp = Prints::new(w);
    let order_24: Vec<usize> = (0..w.len()).filter(|&i| w.order(i) == 24).collect();
    fp.pick("V", &order_24, |f| sig(f, 24, &[(1, 1), (2, 7), (3, 2), (4, 8), (6, 2), (12, 4)], &[2, 4], 4))
}

fn labels_auto_4(lat: &SubgroupLattice) -> Result<Vec<(String, usize)>> {
    let fp = Prints::new(lat);
    let max = lat.maximal_classes();
    let a = fp.pick("A", &max, |f| f.order == 12 && f.is_cyclic)?;
    let b = fp.pick("B", &max, |f| f.order == 12 && !f.is_cyclic && f.element_orders.get(&2) == Some(&1))?;
    let c = fp.pick("C", &max, |f| f.order == 12 && f.element_orders.get(&2) == Some(&7))?;
    let d = fp.pick("D", &max, |f| f.order == 8 && f.abelian_invariants == [2, 4])?;
    let below_a = lat.maximal_subclasses(a);
    let h = fp.pick("H", &below_a, |f| f.order == 6)?;
    let m = fp.pick("M", &below_a, |f| f.order == 4)?;
    let below_d = lat.maximal_subclasses(d);
    let k = fp.pick("K", &below_d, |f| f.order == 4 && !f.is_cyclic)?;
    let rest: Vec<usize> = below_d.iter().copied().filter(|&i| i != m).collect();
    let i = fp.pick("I", &rest, |f| f.order == 4 && f.is_cyclic)?;
    Ok([("V", lat.top()), ("A", a), ("B", b), ("C", c), ("D", d), ("H", h), ("I", i), ("K", k), ("M", m)]
        .into_iter()
        .map(|(l, i)| (l.to_string(), i))
        .collect())
}

/// Labels of the 12-point wreath product, and the sets `F`, `R`, `U`, `P`.
type Labeling = (Vec<(String, usize)>, BTreeMap<&'static str, Vec<usize>>);

fn labels_no_auto_4(lat: &SubgroupLattice) -> Result<Labeling> {
    let fp = Prints::new(lat);
    let max = lat.maximal_classes();
    let m1 =
        fp.pick("M1", &max, |f| sig(f, 192, &[(1, 1), (2, 31), (3, 32), (4, 48), (6, 32), (8, 48)], &[2, 2], 2))?;
    let m2 = fp.pick("M2", &max, |f| f.order == 128)?;
    let m3 = fp.pick("M3", &max, |f| f.order == 96)?;
    let m4 =
        fp.pick("M4", &max, |f| sig(f, 192, &[(1, 1), (2, 7), (3, 32), (4, 56), (6, 32), (12, 64)], &[3, 4], 4))?;
    let m5 = fp.pick("M5", &max, |f| sig(f, 192, &[(1, 1), (2, 7), (3, 32), (4, 72), (6, 32), (8, 48)], &[4], 2))?;

    let under_m1 = lat.maximal_subclasses(m1);
    let a1 = fp.pick("A1", &under_m1, |f| f.order == 48)?;
    let a2 = fp.pick("A2", &under_m1, |f| f.order == 64)?;
    let a3 = fp.pick("A3", &under_m1, |f| sig(f, 96, &[(1, 1), (2, 7), (3, 32), (4, 24), (6, 32)], &[2, 3], 2))?;
    let a45 = |f: &GroupFingerprint| sig(f, 96, &[(1, 1), (2, 15), (3, 32), (4, 24), (8, 24)], &[2], 1);
    let a4 = fp.pick("A4", &under_m1, |f| a45(f) && shape(f, "(2)^6"))?;
    let a5 = fp.pick("A5", &under_m1, |f| a45(f) && !shape(f, "(2)^6"))?;

    let under_m2 = lat.maximal_subclasses(m2);
    let b2 = fp.pick("B2", &under_m2, |f| sig(f, 64, &[(1, 1), (2, 15), (4, 48)], &[2, 2, 2, 4], 16))?;
    let b3 = fp.pick("B3", &under_m2, |f| sig(f, 64, &[(1, 1), (2, 7), (4, 24), (8, 32)], &[2, 4, 4], 16))?;
    let b5 = fp.pick("B5", &under_m2, |f| sig(f, 64, &[(1, 1), (2, 7), (4, 56)], &[4, 4, 4], 64))?;
    let b17 = |f: &GroupFingerprint| sig(f, 64, &[(1, 1), (2, 15), (4, 32), (8, 16)], &[2, 2, 4], 8);
    let b46 = |f: &GroupFingerprint| sig(f, 64, &[(1, 1), (2, 7), (4, 40), (8, 16)], &[4, 4], 8);
    let b1 = fp.pick("B1", &under_m2, |f| b17(f) && !shape(f, "(8)(4)"))?;
    let b7 = fp.pick("B7", &under_m2, |f| b17(f) && shape(f, "(8)(4)"))?;
    let b4 = fp.pick("B4", &under_m2, |f| b46(f) && !shape(f, "(8)(4)"))?;
    let b6 = fp.pick("B6", &under_m2, |f| b46(f) && shape(f, "(8)(4)"))?;

    let under_m3 = lat.maximal_subclasses(m3);
    let c1 = fp.pick("C1", &under_m3, |f| f.order == 24)?;
    let c2 = fp.pick("C2", &under_m3, |f| f.order == 32)?;

    let j = fp.pick("J", &lat.maximal_subclasses(b1), |f| {
        sig(f, 32, &[(1, 1), (2, 7), (4, 16), (8, 8)], &[2, 4], 4) && !shape(f, "(8)(2)(2)") && !shape(f, "(2)^6")
    })?;
    let k = fp.pick("K", &lat.maximal_subclasses(b2), |f| {
        sig(f, 32, &[(1, 1), (2, 11), (4, 20)], &[2, 2, 4], 8) && shape(f, "(4)") && shape(f, "(4)(2)(2)")
    })?;

    let g = lat.top();
    let f_set = vec![m4, m5, a2, a3, a4, a5, b3, b4, b6, b7, j];
    let r_set = vec![g, m1, m2, m3, a1, b1, b2, c1, c2, k];
    let mut excluded = f_set.clone();
    excluded.push(k);
    let u_set: Vec<usize> =
        (0..lat.len()).filter(|i| !r_set.contains(i) && !excluded.iter().any(|&e| lat.contained(*i, e))).collect();
    let mut labels: Vec<(String, usize)> = [
        ("G", g),
        ("M1", m1),
        ("M2", m2),
        ("M3", m3),
        ("M4", m4),
        ("M5", m5),
        ("A1", a1),
        ("A2", a2),
        ("A3", a3),
        ("A4", a4),
        ("A5", a5),
        ("B1", b1),
        ("B2", b2),
        ("B3", b3),
        ("B4", b4),
        ("B5", b5),
        ("B6", b6),
        ("B7", b7),
        ("C1", c1),
        ("C2", c2),
        ("J", j),
        ("K", k),
    ]
    .into_iter()
    .map(|(l, i)| (l.to_string(), i))
    .collect();
    labels.extend(u_set.iter().enumerate().map(|(k, &i)| (format!("U{}", k + 1), i)));
    let mut p_set = r_set.clone();
    p_set.extend(&u_set);
    let sets = BTreeMap::from([("F", f_set), ("R", r_set), ("U", u_set), ("P", p_set)]);
    Ok((labels, sets))
}

fn build(family: FamilyId, n: usize) -> Result<GroupCatalog> {
    let (lattice, labels, sets) = match (family, n) {
        (FamilyId::NoAuto, 3) => {
            let lat = lattice_w18();
            let labels = labels_no_auto_3(lat)?;
            // The generic group, the image-of-eta group and the group at v = 3.
            let p = ["W", "C", "B"].iter().map(|l| lookup(&labels, l)).collect();
            (lat, labels, BTreeMap::from([("P", p)]))
        }
        (FamilyId::Auto, 3) => {
            let lat = lattice_w18();
            let labels = labels_auto_3(lat)?;
            let p = ["W", "A", "B", "K", "M"].iter().map(|l| lookup(&labels, l)).collect();
            (lat, labels, BTreeMap::from([("P", p)]))
        }
        (FamilyId::Auto, 4) => {
            let lat = lattice_v()?;
            let labels = labels_auto_4(lat)?;
            let p = ["V", "A", "B", "D", "I"].iter().map(|l| lookup(&labels, l)).collect();
            (lat, labels, BTreeMap::from([("P", p)]))
        }
        (FamilyId::NoAuto, 4) => {
            let lat = lattice_w384();
            let (labels, sets) = labels_no_auto_4(lat)?;
            (lat, labels, sets)
        }
        _ => return Err(Error::InvalidArgument(format!("no group catalog for n = {n}; expected 3 or 4"))),
    };
    Ok(GroupCatalog { family, n, lattice, labels, sets })
}

fn lookup(labels: &[(String, usize)], l: &str) -> usize {
    labels.iter().find(|(x, _)| x == l).map(|&(_, i)| i).expect("label defined above")
}

/// The catalog for `(family, n)` with `n` in `{3, 4}`, built once.
pub fn catalog(family: FamilyId, n: usize) -> Result<&'static GroupCatalog> {
    static CATALOGS: [OnceLock<Result<GroupCatalog>>; 4] =
        [OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new()];
    let idx = match (family, n) {
        (FamilyId::NoAuto, 3) => 0,
        (FamilyId::Auto, 3) => 1,
        (FamilyId::NoAuto, 4) => 2,
        (FamilyId::Auto, 4) => 3,
        _ => return Err(Error::InvalidArgument(format!("no group catalog for n = {n}; expected 3 or 4"))),
    };
    CATALOGS[idx].get_or_init(|| build(family, n)).as_ref().map_err(Clone::clone)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn orders(c: &GroupCatalog, labels: &[&str]) -> Vec<usize> {
        labels.iter().map(|l| c.group(l).unwrap().order()).collect()
    }

    #[test]
    fn cubic_labels_agree_between_families() {
        let na = catalog(FamilyId::NoAuto, 3).unwrap();
        let au = catalog(FamilyId::Auto, 3).unwrap();
        for l in ["W", "A", "B", "C", "H", "J"] {
            assert_eq!(na.class(l), au.class(l), "{l}");
        }
        assert_eq!(orders(au, &["W", "A", "B", "C", "H", "J", "K", "M"]), vec![18, 9, 6, 6, 2, 3, 3, 3]);
        let lat = au.lattice();
        let mut max: Vec<usize> = lat.maximal_classes().iter().map(|&i| lat.order(i)).collect();
        max.sort_unstable();
        assert_eq!(max, vec![6, 6, 9]);
        // H lies in B and C; the maximal subgroups of C are H and J.
        let (b, c) = (au.class("B").unwrap(), au.class("C").unwrap());
        assert!(lat.contained(au.class("H").unwrap(), b));
        let mut below_c = lat.maximal_subclasses(c);
        below_c.sort_unstable();
        let mut hj = vec![au.class("H").unwrap(), au.class("J").unwrap()];
        hj.sort_unstable();
        assert_eq!(below_c, hj);
    }

    #[test]
    fn cubic_densities() {
        let na = catalog(FamilyId::NoAuto, 3).unwrap();
        let d: BTreeSet<Rational> = na.set("P").iter().map(|&i| na.summary(i).root_density).collect();
        assert_eq!(d, BTreeSet::from([rat(1, 6), rat(5, 18)]));
        assert_eq!(na.summary(na.class("W").unwrap()).degrees, BTreeSet::from([6]));
    }

    #[test]
    fn auto_quartic_labels() {
        let c = catalog(FamilyId::Auto, 4).unwrap();
        assert_eq!(orders(c, &["V", "A", "B", "C", "D", "H", "I", "K", "M"]), vec![24, 12, 12, 12, 8, 6, 4, 4, 4]);
        assert_ne!(c.class("I"), c.class("M"));
        // M and I are conjugate in S_12, so they share a cycle-type distribution.
        assert_eq!(c.group("M").unwrap().cycle_type_distribution(), c.group("I").unwrap().cycle_type_distribution());
        let lat = c.lattice();
        let cl = |l: &str| c.class(l).unwrap();
        for (x, y) in [("I", "B"), ("I", "D"), ("M", "A"), ("M", "D"), ("H", "C"), ("K", "C")] {
            assert!(lat.contained(cl(x), cl(y)), "{x} <= {y}");
        }
        assert_eq!(lat.maximal_classes().len(), 4);
    }

    #[test]
    fn wreath_quartic_labels_and_sets() {
        let c = catalog(FamilyId::NoAuto, 4).unwrap();
        assert_eq!(
            orders(c, &["G", "M1", "M2", "M3", "M4", "M5", "A1", "A2", "A3", "A4", "A5"]),
            vec![384, 192, 128, 96, 192, 192, 48, 64, 96, 96, 96]
        );
        assert_eq!(orders(c, &["B1", "B2", "B3", "B4", "B5", "B6", "B7"]), vec![64; 7]);
        assert_eq!(orders(c, &["C1", "C2", "J", "K"]), vec![24, 32, 32, 32]);
        // A2 and B7 name the same class.
        assert_eq!(c.class("A2"), c.class("B7"));
        let distinct: BTreeSet<usize> = c.set("F").iter().copied().collect();
        assert_eq!((c.set("F").len(), distinct.len()), (11, 10));
        assert_eq!(c.set("R").len(), 10);
        assert_eq!(c.set("U").len(), 16);
        assert_eq!(c.set("P").len(), 26);
        let u_orders: Vec<usize> = c.set("U").iter().map(|&i| c.lattice().order(i)).collect();
        let mut sorted = u_orders.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![8, 8, 12, 16, 16, 16, 16, 32, 32, 32, 32, 32, 32, 32, 32, 32]);
        let max_density = |set: &[usize]| set.iter().map(|&i| c.summary(i).root_density).max().unwrap();
        assert_eq!(max_density(c.set("P")), rat(5, 8));
        assert_eq!(max_density(c.set("R")), rat(39, 64));
        let densities: BTreeSet<Rational> = c.set("P").iter().map(|&i| c.summary(i).root_density).collect();
        assert_eq!(densities.len(), 16);
        let degrees: BTreeSet<usize> = c.set("P").iter().flat_map(|&i| c.summary(i).degrees).collect();
        assert_eq!(degrees, BTreeSet::from([2, 4, 6, 8, 12]));
    }

    #[test]
    fn unknown_labels_are_rejected() {
        let c = catalog(FamilyId::Auto, 3).unwrap();
        assert!(c.resolve("Z").is_err());
        assert_eq!(c.resolve("class-0").unwrap(), 0);
        assert!(catalog(FamilyId::Auto, 5).is_err());
    }
}
