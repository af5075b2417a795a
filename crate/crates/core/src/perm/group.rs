use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use super::permutation::{format_cycle_type, CycleType, Permutation};
use crate::arith::{rat, Rational};
use crate::error::{Error, Result};

/// Default bound on the number of elements [`generate`] will enumerate.
pub const DEFAULT_CLOSURE_CAP: usize = 1_000_000;

/// A permutation group with every element materialized.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
}

/// Number of elements of each cycle type.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CycleTypeDistribution(pub BTreeMap<CycleType, usize>);

impl CycleTypeDistribution {
    pub fn from_types<I: IntoIterator<Item = CycleType>>(types: I) -> Self {
        let mut m = BTreeMap::new();
        for t in types {
            *m.entry(t).or_insert(0) += 1;
        }
        CycleTypeDistribution(m)
    }

    pub fn total(&self) -> usize {
        self.0.values().sum()
    }

    pub fn count(&self, t: &[usize]) -> usize {
        self.0.get(t).copied().unwrap_or(0)
    }

    pub fn support(&self) -> BTreeSet<CycleType> {
        self.0.keys().cloned().collect()
    }

    /// Exact relative frequency of each type.
    pub fn frequencies(&self) -> BTreeMap<CycleType, Rational> {
        let total = self.total() as i64;
        self.0.iter().map(|(t, &c)| (t.clone(), rat(c as i64, total))).collect()
    }

    /// Sum over all types of `|self(t) - other(t)|`, each side as a
    /// frequency.
    pub fn l1_distance(&self, other: &CycleTypeDistribution) -> f64 {
        let (a, b) = (self.total().max(1) as f64, other.total().max(1) as f64);
        let keys: BTreeSet<&CycleType> = self.0.keys().chain(other.0.keys()).collect();
        keys.into_iter().map(|k| (self.count(k) as f64 / a - other.count(k) as f64 / b).abs()).sum()
    }
}

impl Serialize for CycleTypeDistribution {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry<'a> {
            cycle_type: &'a [usize],
            label: String,
            count: usize,
        }
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for (t, &count) in &self.0 {
            seq.serialize_element(&Entry { cycle_type: t, label: format_cycle_type(t), count })?;
        }
        seq.end()
    }
}

/// Closure of `gens` under composition, with the default cap.
pub fn generate(gens: &[Permutation]) -> Result<PermGroup> {
    let n = gens.first().map_or(1, Permutation::degree);
    PermGroup::generate(n, gens, DEFAULT_CLOSURE_CAP)
}

impl PermGroup {
    /// Closure of `gens` acting on `n` points; fails once more than `cap`
    /// elements have been found.
    pub fn generate(n: usize, gens: &[Permutation], cap: usize) -> Result<Self> {
        if let Some(g) = gens.iter().find(|g| g.degree() != n) {
            return Err(Error::InvalidArgument(format!("generator {g} acts on {} points, expected {n}", g.degree())));
        }
        let gens: Vec<Permutation> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        let id = Permutation::identity(n);
        let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
        let mut elements = vec![id.clone()];
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in &gens {
                let y = x.then(g);
                if seen.insert(y.clone()) {
                    if seen.len() > cap {
                        return Err(Error::ClosureCapExceeded { cap });
                    }
                    elements.push(y.clone());
                    queue.push_back(y);
                }
            }
        }
        Ok(Self::from_parts(n, gens, elements))
    }

    /// Builds a group from a full, closed element list.
    pub(crate) fn from_closed_elements(n: usize, elements: Vec<Permutation>) -> Self {
        let gens = small_generating_set(&elements);
        Self::from_parts(n, gens, elements)
    }

    fn from_parts(degree: usize, generators: Vec<Permutation>, mut elements: Vec<Permutation>) -> Self {
        elements.sort_unstable();
        let index = elements.iter().enumerate().map(|(i, g)| (g.clone(), i)).collect();
        PermGroup { degree, generators, elements, index }
    }

    /// The trivial group on `n` points.
    pub fn trivial(n: usize) -> Self {
        Self::from_parts(n, Vec::new(), vec![Permutation::identity(n)])
    }

    /// The symmetric group on `n` points.
    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Permutation::from_cycles(n, "(1,2)").expect("valid"));
            let cycle: Vec<usize> = (2..=n).chain([1]).collect();
            gens.push(Permutation::from_images(&cycle).expect("valid"));
        }
        Self::generate(n, &gens, usize::MAX).expect("no cap")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// All elements in increasing lexicographic order of their images.
    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.index.contains_key(g)
    }

    pub(crate) fn position(&self, g: &Permutation) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.elements.iter().all(|g| other.contains(g))
    }

    pub fn cycle_type_distribution(&self) -> CycleTypeDistribution {
        CycleTypeDistribution::from_types(self.elements.iter().map(Permutation::cycle_type))
    }

    /// Proportion of elements fixing at least one point.
    pub fn root_density(&self) -> Rational {
        let fixing = self.elements.iter().filter(|g| g.fixed_points() > 0).count();
        rat(fixing as i64, self.order() as i64)
    }

    /// Orbits on the 0-based points, each sorted, ordered by least point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for start in 0..self.degree {
            if seen[start] {
                continue;
            }
            let mut orbit = vec![start];
            seen[start] = true;
            let mut k = 0;
            while k < orbit.len() {
                let p = orbit[k];
                for g in &self.generators {
                    let q = g.image(p);
                    if !seen[q] {
                        seen[q] = true;
                        orbit.push(q);
                    }
                }
                k += 1;
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    /// The stabilizer indices `[G : G_i]`, which are the orbit sizes.
    pub fn point_degrees(&self) -> BTreeSet<usize> {
        self.orbits().iter().map(Vec::len).collect()
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() == 1
    }

    /// `{g^-1 h g : h in self}`.
    pub fn conjugate_by(&self, g: &Permutation) -> PermGroup {
        let gi = g.inverse();
        let conj = |h: &Permutation| gi.then(h).then(g);
        let elements = self.elements.iter().map(conj).collect();
        Self::from_parts(self.degree, self.generators.iter().map(conj).collect(), elements)
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().enumerate().all(|(i, a)| self.generators[i + 1..].iter().all(|b| a.then(b) == b.then(a)))
    }
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }
}

impl Eq for PermGroup {}

/// `true` iff some conjugate `h^g` (with `g` in `g_group`) is contained in `k`.
pub fn contained_up_to_conjugacy(h: &PermGroup, k: &PermGroup, g_group: &PermGroup) -> bool {
    if h.order() > k.order() || !k.order().is_multiple_of(h.order()) {
        return false;
    }
    g_group.elements().iter().any(|g| {
        let gi = g.inverse();
        h.generators().iter().all(|x| k.contains(&gi.then(x).then(g)))
    })
}

/// Greedy generating set: walk the elements and keep any that is not yet
/// generated by the ones kept so far.
fn small_generating_set(elements: &[Permutation]) -> Vec<Permutation> {
    let Some(first) = elements.first() else {
        return Vec::new();
    };
    let n = first.degree();
    let mut gens: Vec<Permutation> = Vec::new();
    let mut span: HashSet<Permutation> = HashSet::from([Permutation::identity(n)]);
    let mut ordered: Vec<&Permutation> = elements.iter().collect();
    // Elements of large order first gives shorter generating sets.
    ordered.sort_by_key(|g| std::cmp::Reverse(g.order()));
    for g in ordered {
        if span.contains(g) {
            continue;
        }
        gens.push(g.clone());
        let grown = PermGroup::generate(n, &gens, usize::MAX).expect("no cap");
        span = grown.elements.into_iter().collect();
        if span.len() == elements.len() {
            break;
        }
    }
    gens
}

impl Serialize for PermGroup {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire<'a> {
            degree: usize,
            order: usize,
            generators: &'a [Permutation],
            generators_cycles: Vec<String>,
        }
        Wire {
            degree: self.degree,
            order: self.order(),
            generators: &self.generators,
            generators_cycles: self.generators.iter().map(ToString::to_string).collect(),
        }
        .serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, s: &str) -> Permutation {
        Permutation::from_cycles(n, s).unwrap()
    }

    fn w3() -> PermGroup {
        generate(&[p(6, "(1,2,3)"), p(6, "(4,5,6)"), p(6, "(1,4)(2,5)(3,6)")]).unwrap()
    }

    #[test]
    fn closure_orders() {
        assert_eq!(w3().order(), 18);
        assert_eq!(generate(&[Permutation::identity(4)]).unwrap().order(), 1);
        assert_eq!(PermGroup::symmetric(5).order(), 120);
        assert!(matches!(
            PermGroup::generate(6, &[p(6, "(1,2,3,4,5,6)"), p(6, "(1,2)")], 100),
            Err(Error::ClosureCapExceeded { cap: 100 })
        ));
    }

    #[test]
    fn cycle_types_of_the_order_18_group() {
        let d = w3().cycle_type_distribution();
        assert_eq!(d.count(&[1, 1, 1, 1, 1, 1]), 1);
        assert_eq!(d.count(&[3, 1, 1, 1]), 4);
        assert_eq!(d.count(&[3, 3]), 4);
        assert_eq!(d.count(&[2, 2, 2]), 3);
        assert_eq!(d.count(&[6]), 6);
        assert_eq!(d.total(), 18);
    }

    #[test]
    fn densities_and_degrees() {
        assert_eq!(w3().root_density(), rat(5, 18));
        let c = generate(&[p(6, "(1,6)(2,4)(3,5)"), p(6, "(1,2,3)(4,6,5)")]).unwrap();
        assert_eq!(c.order(), 6);
        assert_eq!(c.root_density(), rat(1, 6));
        assert_eq!(PermGroup::symmetric(3).root_density(), rat(2, 3));
        assert_eq!(w3().point_degrees(), BTreeSet::from([6]));
        assert_eq!(PermGroup::trivial(6).point_degrees(), BTreeSet::from([1]));
    }

    #[test]
    fn containment_up_to_conjugacy() {
        let w = w3();
        let a = generate(&[p(6, "(1,2,3)"), p(6, "(1,2,3)(4,5,6)")]).unwrap();
        let j = generate(&[p(6, "(1,2,3)(4,6,5)")]).unwrap();
        let c = generate(&[p(6, "(1,6)(2,4)(3,5)"), p(6, "(1,2,3)(4,6,5)")]).unwrap();
        assert!(contained_up_to_conjugacy(&j, &a, &w));
        assert!(!contained_up_to_conjugacy(&a, &c, &w));
        // (1,6)(2,4)(3,5) is conjugate to (1,4)(2,5)(3,6) in W.
        let h = generate(&[p(6, "(1,6)(2,4)(3,5)")]).unwrap();
        let b = generate(&[p(6, "(1,4)(2,5)(3,6)"), p(6, "(1,2,3)(4,5,6)")]).unwrap();
        assert!(contained_up_to_conjugacy(&h, &b, &w));
    }

    #[test]
    fn rebuilt_generators_span_the_group() {
        let w = w3();
        let again = PermGroup::from_closed_elements(6, w.elements().to_vec());
        assert_eq!(again, w);
        assert!(again.generators().len() <= 3);
        let back = PermGroup::generate(6, again.generators(), usize::MAX).unwrap();
        assert_eq!(back, w);
    }
}
