//! Brute-force reference implementations.
//!
//! Nothing here calls the algorithms it is meant to check: normal subgroups
//! are found by joining normal closures of single elements, subnormal chains
//! by explicit search, and closed subsets of posets by enumerating every
//! subset. All of it is exponential or worse and meant for small inputs.

use std::collections::{BTreeSet, HashSet};

use rand::seq::SliceRandom;
use rand::Rng;

use crate::group::{ElementSet, PermGroup, Prime, Subgroup};
use crate::space::FinitePoset;

/// Every normal subgroup of `h` (as element sets of the ambient group).
///
/// A normal subgroup is generated by the conjugacy classes it contains, so
/// it is a join of normal closures of single elements.
pub fn normal_subgroups(group: &PermGroup, h: &Subgroup) -> Vec<ElementSet> {
    let members = h.elements().to_vec();
    let normal_closure = |x: usize| group.closure(members.iter().map(|&g| group.conjugate(x, g)));

    let mut found: HashSet<ElementSet> = HashSet::new();
    found.insert(ElementSet::from_indices(group.order(), [0]));
    let mut atoms: Vec<ElementSet> = Vec::new();
    for &x in &members {
        let n = normal_closure(x);
        if found.insert(n.clone()) {
            atoms.push(n);
        }
    }
    let mut frontier: Vec<ElementSet> = found.iter().cloned().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for a in &frontier {
            for b in &atoms {
                if b.is_subset(a) {
                    continue;
                }
                let joined = group.closure(a.union(b).iter());
                if found.insert(joined.clone()) {
                    next.push(joined);
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<ElementSet> = found.into_iter().collect();
    out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    out
}

/// Intersection of all normal subgroups of `h` of `p`-power index.
pub fn p_residual_by_intersection(group: &PermGroup, h: &Subgroup, p: Prime) -> ElementSet {
    normal_subgroups(group, h)
        .into_iter()
        .filter(|n| p.is_power(h.order() / n.len()))
        .fold(h.elements().clone(), |acc, n| acc.intersection(&n))
}

/// Searches for a chain `H = H_0 ⊴ H_1 ⊴ … ⊴ H_k = G` in which every step
/// has index `p`.
pub fn p_subnormal_by_chain(group: &PermGroup, h: &ElementSet, p: Prime) -> bool {
    let mut visited = HashSet::new();
    let mut stack = vec![ElementSet::full(group.order())];
    while let Some(k) = stack.pop() {
        if k == *h {
            return true;
        }
        if !visited.insert(k.clone()) {
            continue;
        }
        let k_sub = Subgroup::from_elements(group, k.clone()).expect("chain members are subgroups");
        for m in normal_subgroups(group, &k_sub) {
            if k.len() == m.len() * p.get() as usize && h.is_subset(&m) {
                stack.push(m);
            }
        }
    }
    false
}

/// Every specialization-closed subset of `poset`, by enumerating all
/// `2^n` subsets.
pub fn closed_subsets(poset: &FinitePoset) -> Vec<BTreeSet<usize>> {
    let n = poset.len();
    assert!(n <= 20, "closed-subset enumeration is exponential");
    (0u32..1 << n)
        .map(|mask| {
            (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .collect::<BTreeSet<_>>()
        })
        .filter(|s| {
            s.iter()
                .all(|&x| (0..n).all(|y| !poset.specializes_to(x, y) || s.contains(&y)))
        })
        .collect()
}

/// Union of every closed subset contained in `inside`.
pub fn union_of_closed_subsets_inside(
    poset: &FinitePoset,
    inside: &BTreeSet<usize>,
) -> BTreeSet<usize> {
    closed_subsets(poset)
        .into_iter()
        .filter(|s| s.is_subset(inside))
        .flatten()
        .collect()
}

/// Whether `set` is a union of connected components of the comparability
/// graph, computed by union-find.
pub fn is_union_of_components(poset: &FinitePoset, set: &BTreeSet<usize>) -> bool {
    let n = poset.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    for x in 0..n {
        for y in 0..n {
            if poset.specializes_to(x, y) {
                let (a, b) = (find(&mut parent, x), find(&mut parent, y));
                parent[a] = b;
            }
        }
    }
    (0..n).all(|x| {
        (0..n).all(|y| {
            find(&mut parent, x) != find(&mut parent, y) || set.contains(&x) == set.contains(&y)
        })
    })
}

/// A random poset on `n` points: each pair `i < j` is joined by `i ⤳ j` with
/// probability `density`, then closed transitively.
pub fn random_poset(rng: &mut impl Rng, n: usize, density: f64) -> FinitePoset {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                edges.push((i, j));
            }
        }
    }
    // Shuffle names so that index order is not a linear extension.
    let mut labels: Vec<usize> = (0..n).collect();
    labels.shuffle(rng);
    let edges: Vec<(usize, usize)> = edges
        .into_iter()
        .map(|(a, b)| (labels[a], labels[b]))
        .collect();
    FinitePoset::unnamed(n, &edges).expect("edges between increasing indices are acyclic")
}

/// Up to `limit` closed subsets of `poset`, chosen at random when there are
/// more.
pub fn sample_closed_subsets(
    poset: &FinitePoset,
    rng: &mut impl Rng,
    limit: usize,
) -> Vec<BTreeSet<usize>> {
    let mut all = closed_subsets(poset);
    if all.len() > limit {
        all.shuffle(rng);
        all.truncate(limit);
        all.sort();
    }
    all
}
