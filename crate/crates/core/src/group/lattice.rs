use std::collections::HashSet;
use std::sync::Arc;

use super::elements::ElementSet;
use super::perm_group::{Caps, PermGroup};
use super::subgroup::Subgroup;
use crate::error::{Error, Result};

/// A conjugacy class of subgroups, stored via its canonical representative:
/// the conjugate whose sorted element-index list is lexicographically least.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupClass {
    representative: Subgroup,
    class_size: usize,
}

impl SubgroupClass {
    pub fn representative(&self) -> &Subgroup {
        &self.representative
    }

    pub fn order(&self) -> usize {
        self.representative.order()
    }

    pub fn class_size(&self) -> usize {
        self.class_size
    }

    pub fn is_normal(&self) -> bool {
        self.class_size == 1
    }
}

/// All conjugacy classes of subgroups of a group, sorted by
/// `(order, representative)`.
#[derive(Clone, Debug)]
pub struct SubgroupLattice {
    group: Arc<PermGroup>,
    classes: Vec<SubgroupClass>,
}

/// Lexicographically least conjugate of a subgroup.
pub fn canonical_conjugate(group: &PermGroup, h: &Subgroup) -> Subgroup {
    (0..group.order())
        .map(|g| h.conjugate(group, g))
        .min()
        .expect("groups are non-empty")
}

/// Enumerates subgroup classes by cyclic extension.
///
/// Every nontrivial subgroup is `⟨K, z⟩` for a proper subgroup `K` and an
/// element `z` of prime-power order, so extending one representative per
/// known class by one generator per cyclic subgroup of prime-power order
/// reaches a conjugate of every subgroup.
pub fn subgroup_classes(group: &Arc<PermGroup>, caps: Caps) -> Result<Vec<SubgroupClass>> {
    let g = group.as_ref();
    if g.order() > caps.max_lattice_order {
        return Err(Error::CapExceeded {
            what: "group order for subgroup lattice",
            size: g.order(),
            limit: caps.max_lattice_order,
        });
    }
    let zuppos = prime_power_cyclic_generators(g);

    let trivial = Subgroup::trivial(g);
    let mut reps: HashSet<Subgroup> = HashSet::from([trivial.clone()]);
    let mut seen_raw: HashSet<ElementSet> = HashSet::new();
    let mut worklist = vec![trivial];
    while let Some(k) = worklist.pop() {
        for &z in &zuppos {
            if k.contains(z) {
                continue;
            }
            let joined = g.join(k.elements(), z);
            if !seen_raw.insert(joined.clone()) {
                continue;
            }
            let canon = canonical_conjugate(g, &Subgroup::from_closed(joined));
            if reps.insert(canon.clone()) {
                worklist.push(canon);
            }
        }
    }

    let mut classes: Vec<SubgroupClass> = reps
        .into_iter()
        .map(|rep| {
            let class_size = g.order() / rep.normalizer(g).order();
            SubgroupClass {
                representative: rep,
                class_size,
            }
        })
        .collect();
    classes.sort_by(|a, b| (a.order(), &a.representative).cmp(&(b.order(), &b.representative)));
    Ok(classes)
}

// One generator (the least element index) per cyclic subgroup of
// prime-power order > 1.
fn prime_power_cyclic_generators(group: &PermGroup) -> Vec<usize> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for x in 1..group.order() {
        if !is_prime_power(group.element_order(x)) {
            continue;
        }
        let cyclic = group.closure([x]);
        if seen.insert(cyclic) {
            out.push(x);
        }
    }
    out
}

fn is_prime_power(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d)).expect("n >= 2 has a divisor");
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
    }
    m == 1
}

impl SubgroupLattice {
    pub fn new(group: Arc<PermGroup>, caps: Caps) -> Result<Self> {
        let classes = subgroup_classes(&group, caps)?;
        Ok(SubgroupLattice { group, classes })
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn classes(&self) -> &[SubgroupClass] {
        &self.classes
    }

    pub fn class(&self, i: usize) -> &SubgroupClass {
        &self.classes[i]
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn trivial_class(&self) -> usize {
        0
    }

    pub fn whole_class(&self) -> usize {
        self.classes.len() - 1
    }

    /// Index of the class containing `h`.
    pub fn class_of(&self, h: &Subgroup) -> Option<usize> {
        let canon = canonical_conjugate(&self.group, h);
        self.classes
            .binary_search_by(|c| (c.order(), &c.representative).cmp(&(canon.order(), &canon)))
            .ok()
    }

    pub fn normal_classes(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.classes.len()).filter(|&i| self.classes[i].is_normal())
    }

    /// Distinct conjugates of class `i`'s representative.
    pub fn conjugates(&self, i: usize) -> Vec<Subgroup> {
        let rep = &self.classes[i].representative;
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for g in 0..self.group.order() {
            let c = rep.conjugate(&self.group, g);
            if seen.insert(c.clone()) {
                out.push(c);
            }
        }
        out
    }

    /// `K ≤_G H`: some conjugate of class `k` lies inside class `h`'s
    /// representative.
    pub fn is_subconjugate(&self, k: usize, h: usize) -> bool {
        let (small, big) = (&self.classes[k], &self.classes[h]);
        if big.order() % small.order() != 0 {
            return false;
        }
        (0..self.group.order()).any(|g| {
            small
                .representative
                .elements()
                .iter()
                .all(|x| big.representative.contains(self.group.conjugate(x, g)))
        })
    }
}
