use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use super::elements::ElementSet;
use super::perm::Permutation;
use crate::error::{Error, Result};

/// Environment variable that overrides both size caps.
pub const MAX_ORDER_ENV: &str = "LOCUS_MAX_ORDER";

/// Size limits for element materialization and subgroup-lattice enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub max_order: usize,
    pub max_lattice_order: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_order: 10_000,
            max_lattice_order: 200,
        }
    }
}

impl Caps {
    /// Default caps, with both replaced by `LOCUS_MAX_ORDER` when it is set.
    pub fn from_env() -> Self {
        match std::env::var(MAX_ORDER_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
        {
            Some(n) => Caps {
                max_order: n,
                max_lattice_order: n,
            },
            None => Caps::default(),
        }
    }
}

// Cayley tables are built for groups up to this order; larger groups fall
// back to composing permutations and looking the result up.
const TABLE_LIMIT: usize = 1024;

/// A finite permutation group with its full element list materialized.
///
/// Elements are sorted by their image arrays, so element indices depend only
/// on the group as a set of permutations, never on the generating set.
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
    inverses: Vec<u32>,
    generator_indices: Vec<usize>,
    table: OnceLock<Option<Vec<u32>>>,
    orders: OnceLock<Vec<u32>>,
}

impl PermGroup {
    /// Closes `gens` under composition, with the default caps.
    pub fn from_generators(degree: usize, gens: Vec<Permutation>) -> Result<Self> {
        Self::from_generators_with_caps(degree, gens, Caps::default())
    }

    pub fn from_generators_with_caps(
        degree: usize,
        gens: Vec<Permutation>,
        caps: Caps,
    ) -> Result<Self> {
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::InvalidPermutation(format!(
                    "generator {g} has degree {} but the group has degree {degree}",
                    g.degree()
                )));
            }
        }
        let id = Permutation::identity(degree);
        let mut seen: HashMap<Permutation, ()> = HashMap::new();
        seen.insert(id.clone(), ());
        let mut queue = VecDeque::from([id]);
        let mut found = Vec::new();
        while let Some(x) = queue.pop_front() {
            for s in &gens {
                let y = x.then(s);
                if !seen.contains_key(&y) {
                    if seen.len() + 1 > caps.max_order {
                        return Err(Error::CapExceeded {
                            what: "group order",
                            size: seen.len() + 1,
                            limit: caps.max_order,
                        });
                    }
                    seen.insert(y.clone(), ());
                    queue.push_back(y);
                }
            }
            found.push(x);
        }
        found.sort();
        let index: HashMap<Permutation, u32> = found
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as u32))
            .collect();
        let inverses = found.iter().map(|p| index[&p.inverse()]).collect();
        let generator_indices = gens.iter().map(|g| index[g] as usize).collect();
        Ok(PermGroup {
            degree,
            generators: gens,
            elements: found,
            index,
            inverses,
            generator_indices,
            table: OnceLock::new(),
            orders: OnceLock::new(),
        })
    }

    pub fn trivial(degree: usize) -> Self {
        Self::from_generators(degree, Vec::new()).expect("trivial group always fits")
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

    /// Indices of the generators in the element list.
    pub fn generator_indices(&self) -> &[usize] {
        &self.generator_indices
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).map(|&i| i as usize)
    }

    /// Index of the identity element (always 0).
    pub fn identity(&self) -> usize {
        0
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.inverses[i] as usize
    }

    /// Product `a·b`: apply `a`, then `b`.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match self.table() {
            Some(t) => t[a * self.order() + b] as usize,
            None => self.index[&self.elements[a].then(&self.elements[b])] as usize,
        }
    }

    /// Conjugate `g⁻¹·h·g`.
    pub fn conjugate(&self, h: usize, g: usize) -> usize {
        self.mul(self.mul(self.inverse(g), h), g)
    }

    /// Multiplicative order of element `i`.
    pub fn element_order(&self, i: usize) -> usize {
        self.orders.get_or_init(|| {
            (0..self.order())
                .map(|i| {
                    let mut k = 1;
                    let mut x = i;
                    while x != 0 {
                        x = self.mul(x, i);
                        k += 1;
                    }
                    k
                })
                .collect()
        })[i] as usize
    }

    /// The subgroup generated by the given elements, as an element set.
    pub fn closure(&self, seeds: impl IntoIterator<Item = usize>) -> ElementSet {
        let gens: Vec<usize> = seeds.into_iter().filter(|&g| g != 0).collect();
        let mut set = ElementSet::empty(self.order());
        set.insert(0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &s in &gens {
                let y = self.mul(x, s);
                if set.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        set
    }

    /// Smallest subgroup containing `base` and `extra`, given that `base` is
    /// already a subgroup.
    pub fn join(&self, base: &ElementSet, extra: usize) -> ElementSet {
        if base.contains(extra) {
            return base.clone();
        }
        let mut set = base.clone();
        let mut queue: VecDeque<usize> = base.iter().collect();
        let gens: Vec<usize> = super::subgroup::generating_set(self, base)
            .into_iter()
            .chain(std::iter::once(extra))
            .collect();
        while let Some(x) = queue.pop_front() {
            for &s in &gens {
                let y = self.mul(x, s);
                if set.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        set
    }

    /// Conjugate `g⁻¹·S·g` of an element set.
    pub fn conjugate_set(&self, set: &ElementSet, g: usize) -> ElementSet {
        ElementSet::from_indices(self.order(), set.iter().map(|h| self.conjugate(h, g)))
    }

    pub fn is_subgroup(&self, set: &ElementSet) -> bool {
        if set.universe() != self.order() || !set.contains(0) {
            return false;
        }
        let members = set.to_vec();
        members
            .iter()
            .all(|&a| members.iter().all(|&b| set.contains(self.mul(a, b))))
    }

    fn table(&self) -> Option<&Vec<u32>> {
        self.table
            .get_or_init(|| {
                let n = self.order();
                if n > TABLE_LIMIT {
                    return None;
                }
                let mut t = Vec::with_capacity(n * n);
                for a in &self.elements {
                    for b in &self.elements {
                        t.push(self.index[&a.then(b)]);
                    }
                }
                Some(t)
            })
            .as_ref()
    }
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }
}

impl Eq for PermGroup {}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}
