#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use dynatomic::perm::{PermGroup, Permutation};

/// Every subgroup found by testing each element subset of admissible size
/// for closure, then grouped into conjugacy classes.
pub fn brute_force_classes(g: &PermGroup) -> usize {
    let els = g.elements();
    let n = els.len();
    let id = els.iter().position(Permutation::is_identity).unwrap();
    let others: Vec<usize> = (0..n).filter(|&i| i != id).collect();
    let mut subgroups: Vec<BTreeSet<Permutation>> = Vec::new();
    for size in (1..=n).filter(|d| n.is_multiple_of(*d)) {
        for combo in combinations(others.len(), size - 1) {
            let set: HashSet<&Permutation> =
                std::iter::once(&els[id]).chain(combo.iter().map(|&k| &els[others[k]])).collect();
            if set.iter().all(|a| set.iter().all(|b| set.contains(&a.then(b)))) {
                subgroups.push(set.into_iter().cloned().collect());
            }
        }
    }
    let mut classes: Vec<BTreeSet<BTreeSet<Permutation>>> = Vec::new();
    for s in subgroups {
        if classes.iter().any(|c| c.contains(&s)) {
            continue;
        }
        let orbit = els.iter().map(|t| s.iter().map(|x| x.conjugate_by(t)).collect::<BTreeSet<_>>()).collect();
        classes.push(orbit);
    }
    classes.len()
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}
