use std::collections::HashMap;

use super::group::PermGroup;
use super::permutation::Permutation;
use crate::error::{Error, Result};

/// Default largest group order [`SubgroupLattice::new`] accepts.
pub const DEFAULT_LATTICE_CAP: usize = 4096;

/// A set of element indices of the ambient group.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
struct Bits(Vec<u64>);

impl Bits {
    fn empty(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn has(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn is_subset(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                (w != 0).then(|| {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    k * 64 + b
                })
            })
        })
    }
}

/// Multiplication and inversion tables over the element indices of a group.
struct Table {
    n: usize,
    mul: Vec<u16>,
    inv: Vec<u16>,
}

impl Table {
    fn new(g: &PermGroup) -> Self {
        let n = g.order();
        let els = g.elements();
        let mut mul = vec![0u16; n * n];
        for (a, x) in els.iter().enumerate() {
            for (b, y) in els.iter().enumerate() {
                mul[a * n + b] = g.position(&x.then(y)).expect("closed") as u16;
            }
        }
        let inv = els.iter().map(|x| g.position(&x.inverse()).expect("closed") as u16).collect();
        Table { n, mul, inv }
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b] as usize
    }

    /// `t^-1 x t`.
    fn conj(&self, x: usize, t: usize) -> usize {
        self.mul(self.mul(self.inv[t] as usize, x), t)
    }

    fn conjugate_set(&self, s: &Bits, t: usize) -> Bits {
        let mut out = Bits::empty(self.n);
        for x in s.iter() {
            out.insert(self.conj(x, t));
        }
        out
    }

    /// Subgroup generated by `seeds`.
    fn closure(&self, seeds: &[usize]) -> Bits {
        let mut set = Bits::empty(self.n);
        set.insert(0);
        let mut list = vec![0usize];
        let mut k = 0;
        while k < list.len() {
            let x = list[k];
            for &s in seeds {
                let y = self.mul(x, s);
                if !set.has(y) {
                    set.insert(y);
                    list.push(y);
                }
            }
            k += 1;
        }
        set
    }

    fn commutator_subgroup(&self, s: &Bits) -> Bits {
        let els: Vec<usize> = s.iter().collect();
        let mut comms = Vec::new();
        for &a in &els {
            for &b in &els {
                let c = self.mul(self.mul(self.inv[a] as usize, self.inv[b] as usize), self.mul(a, b));
                comms.push(c);
            }
        }
        comms.sort_unstable();
        comms.dedup();
        self.closure(&comms)
    }
}

/// One conjugacy class of subgroups.
#[derive(Clone, Debug)]
pub struct SubgroupClass {
    order: usize,
    /// All conjugates; the first is the canonical representative.
    members: Vec<Bits>,
}

impl SubgroupClass {
    pub fn order(&self) -> usize {
        self.order
    }

    /// Number of subgroups in the class.
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// The subgroups of a solvable permutation group up to conjugacy.
///
/// Classes are found bottom-up by cyclic extension: every subgroup `K` of a
/// solvable group contains a normal subgroup `H` of prime index, so `K` is
/// `<H, g>` for some `g` normalizing `H` with `g^p` in `H`. Extending one
/// representative per class and discarding conjugates of known subgroups
/// reaches every class exactly once.
pub struct SubgroupLattice {
    group: PermGroup,
    table: Table,
    classes: Vec<SubgroupClass>,
    lookup: HashMap<Bits, usize>,
}

/// One representative of each conjugacy class of subgroups of `g`, in
/// increasing order.
pub fn subgroup_conjugacy_classes(g: &PermGroup) -> Result<Vec<PermGroup>> {
    let lat = SubgroupLattice::new(g)?;
    Ok((0..lat.len()).map(|i| lat.representative(i)).collect())
}

impl SubgroupLattice {
    pub fn new(g: &PermGroup) -> Result<Self> {
        Self::with_cap(g, DEFAULT_LATTICE_CAP)
    }

    pub fn with_cap(g: &PermGroup, cap: usize) -> Result<Self> {
        if g.order() > cap.min(u16::MAX as usize) {
            return Err(Error::LatticeCapExceeded { order: g.order(), cap });
        }
        let table = Table::new(g);
        let n = table.n;
        let mut all = Bits::empty(n);
        (0..n).for_each(|i| all.insert(i));
        if !is_solvable(&table, &all) {
            return Err(Error::NonSolvableGroup);
        }

        let mut trivial = Bits::empty(n);
        trivial.insert(0);
        let mut classes = vec![SubgroupClass { order: 1, members: vec![trivial.clone()] }];
        let mut seen: HashMap<Bits, usize> = HashMap::from([(trivial, 0)]);
        let mut layer = vec![0usize];
        while !layer.is_empty() {
            let mut next = Vec::new();
            for ci in layer {
                let h = classes[ci].members[0].clone();
                for k in extensions(&table, &h) {
                    if seen.contains_key(&k) {
                        continue;
                    }
                    let id = classes.len();
                    let members = conjugacy_orbit(&table, &k);
                    for m in &members {
                        seen.insert(m.clone(), id);
                    }
                    classes.push(SubgroupClass { order: k.len(), members });
                    next.push(id);
                }
            }
            layer = next;
        }

        classes.sort_by_cached_key(|c| (c.order, sorted_indices(&c.members[0])));
        let lookup =
            classes.iter().enumerate().flat_map(|(i, c)| c.members.iter().map(move |m| (m.clone(), i))).collect();
        Ok(SubgroupLattice { group: g.clone(), table, classes, lookup })
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    /// Number of conjugacy classes.
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[SubgroupClass] {
        &self.classes
    }

    pub fn order(&self, i: usize) -> usize {
        self.classes[i].order
    }

    /// Index of the class of the whole group.
    pub fn top(&self) -> usize {
        self.classes.len() - 1
    }

    /// The canonical representative of class `i`.
    pub fn representative(&self, i: usize) -> PermGroup {
        self.to_group(&self.classes[i].members[0])
    }

    /// Every subgroup in class `i`.
    pub fn members(&self, i: usize) -> Vec<PermGroup> {
        self.classes[i].members.iter().map(|m| self.to_group(m)).collect()
    }

    fn to_group(&self, s: &Bits) -> PermGroup {
        let els: Vec<Permutation> = s.iter().map(|i| self.group.elements()[i].clone()).collect();
        PermGroup::from_closed_elements(self.group.degree(), els)
    }

    /// The class containing the subgroup `h` of the ambient group.
    pub fn class_of(&self, h: &PermGroup) -> Option<usize> {
        let mut s = Bits::empty(self.table.n);
        for g in h.elements() {
            s.insert(self.group.position(g)?);
        }
        self.lookup.get(&s).copied()
    }

    /// `true` iff some conjugate of class `i` lies in the representative of
    /// class `j` (equivalently in some member of `j`).
    pub fn contained(&self, i: usize, j: usize) -> bool {
        let (a, b) = (&self.classes[i], &self.classes[j]);
        if b.order % a.order != 0 {
            return false;
        }
        a.members.iter().any(|m| m.is_subset(&b.members[0]))
    }

    /// Classes of the maximal subgroups of the representative of class `j`.
    pub fn maximal_subclasses(&self, j: usize) -> Vec<usize> {
        let top = &self.classes[j].members[0];
        let order = self.classes[j].order;
        let inside: Vec<(usize, &Bits)> = self
            .classes
            .iter()
            .enumerate()
            .filter(|(_, c)| c.order < order && order.is_multiple_of(c.order))
            .flat_map(|(i, c)| c.members.iter().filter(|m| m.is_subset(top)).map(move |m| (i, m)))
            .collect();
        let mut out: Vec<usize> = inside
            .iter()
            .filter(|(_, m)| !inside.iter().any(|(_, o)| o.len() > m.len() && m.is_subset(o)))
            .map(|&(i, _)| i)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Classes of maximal subgroups of the whole group.
    pub fn maximal_classes(&self) -> Vec<usize> {
        self.maximal_subclasses(self.top())
    }

    /// Every class contained (up to conjugacy) in class `j`, `j` included.
    pub fn classes_below(&self, j: usize) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.contained(i, j)).collect()
    }
}

fn sorted_indices(s: &Bits) -> Vec<usize> {
    s.iter().collect()
}

fn is_solvable(t: &Table, g: &Bits) -> bool {
    let mut cur = g.clone();
    loop {
        if cur.len() == 1 {
            return true;
        }
        let d = t.commutator_subgroup(&cur);
        if d.len() == cur.len() {
            return false;
        }
        cur = d;
    }
}

/// All subgroups `<H, g>` with `g` normalizing `H` and `g` of prime order
/// modulo `H`.
fn extensions(t: &Table, h: &Bits) -> Vec<Bits> {
    let n = t.n;
    let normalizer: Vec<usize> = (0..n).filter(|&g| t.conjugate_set(h, g) == *h).collect();
    let hs: Vec<usize> = h.iter().collect();
    let mut covered = h.clone();
    let mut out = Vec::new();
    for &g in &normalizer {
        if covered.has(g) {
            continue;
        }
        for &x in &hs {
            covered.insert(t.mul(x, g));
        }
        let mut k = 1;
        let mut y = g;
        while !h.has(y) {
            y = t.mul(y, g);
            k += 1;
        }
        if !is_prime(k) {
            continue;
        }
        let mut ext = h.clone();
        let mut gi = g;
        for _ in 1..k {
            for &x in &hs {
                ext.insert(t.mul(x, gi));
            }
            gi = t.mul(gi, g);
        }
        out.push(ext);
    }
    out
}

fn conjugacy_orbit(t: &Table, k: &Bits) -> Vec<Bits> {
    let mut members: Vec<Bits> = Vec::new();
    let mut set = std::collections::HashSet::new();
    for g in 0..t.n {
        let c = t.conjugate_set(k, g);
        if set.insert(c.clone()) {
            members.push(c);
        }
    }
    members.sort_by_cached_key(sorted_indices);
    members
}

fn is_prime(k: usize) -> bool {
    k >= 2 && (2..).take_while(|d| d * d <= k).all(|d| !k.is_multiple_of(d))
}
