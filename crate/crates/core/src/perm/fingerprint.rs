use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use super::group::{CycleTypeDistribution, PermGroup};
use super::permutation::Permutation;

/// Cycle shapes (non-trivial cycles only) that single out specific
/// subgroups of the 12-point wreath product.
pub const DISTINGUISHING_SHAPES: [(&str, &[usize]); 5] = [
    ("(8)(4)", &[8, 4]),
    ("(8)(2)(2)", &[8, 2, 2]),
    ("(2)^6", &[2, 2, 2, 2, 2, 2]),
    ("(4)", &[4]),
    ("(4)(2)(2)", &[4, 2, 2]),
];

/// Isomorphism- and conjugacy-invariant data of a permutation group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupFingerprint {
    pub order: usize,
    pub cycle_types: CycleTypeDistribution,
    /// Prime-power orders of the cyclic factors of `H / [H, H]`, ascending.
    pub abelian_invariants: Vec<usize>,
    pub center_order: usize,
    /// Element order to count.
    pub element_orders: BTreeMap<usize, usize>,
    pub is_cyclic: bool,
    pub is_abelian: bool,
    /// Whether the group has an element of each of [`DISTINGUISHING_SHAPES`].
    pub shapes: BTreeMap<String, bool>,
}

impl GroupFingerprint {
    /// `true` iff some element has exactly these non-trivial cycle lengths.
    pub fn has_shape(&self, shape: &[usize]) -> bool {
        self.cycle_types.0.keys().any(|t| nontrivial(t) == shape)
    }
}

fn nontrivial(t: &[usize]) -> &[usize] {
    let k = t.iter().position(|&c| c == 1).unwrap_or(t.len());
    &t[..k]
}

pub fn fingerprint(h: &PermGroup) -> GroupFingerprint {
    let cycle_types = h.cycle_type_distribution();
    let mut element_orders = BTreeMap::new();
    for g in h.elements() {
        *element_orders.entry(g.order()).or_insert(0) += 1;
    }
    let center_order = h.elements().iter().filter(|z| h.generators().iter().all(|g| z.then(g) == g.then(z))).count();
    let is_abelian = center_order == h.order();
    let is_cyclic = element_orders.contains_key(&h.order());
    let mut fp = GroupFingerprint {
        order: h.order(),
        cycle_types,
        abelian_invariants: abelian_invariants(h),
        center_order,
        element_orders,
        is_cyclic,
        is_abelian,
        shapes: BTreeMap::new(),
    };
    fp.shapes = DISTINGUISHING_SHAPES.iter().map(|(name, s)| (name.to_string(), fp.has_shape(s))).collect();
    fp
}

/// Invariants of the abelianization, read off from how many cosets of the
/// derived subgroup are killed by each prime power.
fn abelian_invariants(h: &PermGroup) -> Vec<usize> {
    let derived = derived_subgroup(h);
    let m = h.order() / derived.len();
    let mut out = Vec::new();
    for p in prime_factors(m) {
        // c[k] = log_p #{cosets a : a^(p^k) = 1}; c[k] - c[k-1] counts the
        // cyclic factors of order at least p^k.
        let mut logs = vec![0u32];
        let mut k = 1;
        loop {
            let e = p.pow(k);
            let killed = h.elements().iter().filter(|g| derived.contains(&g.pow(e))).count();
            let cosets = killed / derived.len();
            let log = ilog(cosets, p);
            if log == *logs.last().expect("nonempty") {
                break;
            }
            logs.push(log);
            k += 1;
        }
        let at_least: Vec<u32> = logs.windows(2).map(|w| w[1] - w[0]).collect();
        for (i, &cnt) in at_least.iter().enumerate() {
            let next = at_least.get(i + 1).copied().unwrap_or(0);
            for _ in 0..cnt - next {
                out.push(p.pow(i as u32 + 1));
            }
        }
    }
    out.sort_unstable();
    out
}

fn derived_subgroup(h: &PermGroup) -> HashSet<Permutation> {
    let gens = h.generators();
    let mut seeds = Vec::new();
    for a in gens {
        for b in gens {
            let c = a.inverse().then(&b.inverse()).then(a).then(b);
            if !c.is_identity() {
                seeds.push(c);
            }
        }
    }
    // The normal closure of the generator commutators is the derived subgroup.
    let mut set: HashSet<Permutation> = HashSet::from([Permutation::identity(h.degree())]);
    let mut list: Vec<Permutation> = set.iter().cloned().collect();
    let mut k = 0;
    while k < list.len() {
        let x = list[k].clone();
        let mut new = Vec::new();
        for s in &seeds {
            new.push(x.then(s));
        }
        for g in gens {
            new.push(x.conjugate_by(g));
        }
        for y in new {
            if set.insert(y.clone()) {
                list.push(y);
            }
        }
        k += 1;
    }
    set
}

fn prime_factors(mut m: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            out.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

fn ilog(mut x: usize, p: usize) -> u32 {
    let mut k = 0;
    while x > 1 {
        x /= p;
        k += 1;
    }
    k
}
