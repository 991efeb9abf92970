use std::fmt::Write as _;

use super::elements::ElementSet;
use super::perm_group::PermGroup;
use crate::error::{Error, Result};

/// A subgroup of an ambient [`PermGroup`], as a set of element indices.
///
/// A `Subgroup` does not hold a reference to its ambient group; every method
/// that needs the multiplication takes the group explicitly.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Subgroup {
    elements: ElementSet,
}

impl Subgroup {
    /// Validates that `elements` is closed, contains the identity, and
    /// belongs to `group`.
    pub fn from_elements(group: &PermGroup, elements: ElementSet) -> Result<Self> {
        if group.is_subgroup(&elements) {
            Ok(Subgroup { elements })
        } else {
            Err(Error::NotASubgroup)
        }
    }

    pub(crate) fn from_closed(elements: ElementSet) -> Self {
        Subgroup { elements }
    }

    pub fn generated_by(group: &PermGroup, gens: impl IntoIterator<Item = usize>) -> Self {
        Subgroup {
            elements: group.closure(gens),
        }
    }

    pub fn trivial(group: &PermGroup) -> Self {
        Subgroup {
            elements: ElementSet::from_indices(group.order(), [0]),
        }
    }

    pub fn whole(group: &PermGroup) -> Self {
        Subgroup {
            elements: ElementSet::full(group.order()),
        }
    }

    pub fn elements(&self) -> &ElementSet {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn contains(&self, element: usize) -> bool {
        self.elements.contains(element)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.is_subset(&other.elements)
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        Subgroup {
            elements: self.elements.intersection(&other.elements),
        }
    }

    /// `g⁻¹·self·g`.
    pub fn conjugate(&self, group: &PermGroup, g: usize) -> Subgroup {
        Subgroup {
            elements: group.conjugate_set(&self.elements, g),
        }
    }

    /// Whether `self` is normalized by every element of `over`.
    pub fn is_normal_in(&self, group: &PermGroup, over: &Subgroup) -> bool {
        over.elements.iter().all(|g| {
            self.elements
                .iter()
                .all(|h| self.contains(group.conjugate(h, g)))
        })
    }

    pub fn normalizer(&self, group: &PermGroup) -> Subgroup {
        let members = (0..group.order()).filter(|&g| {
            self.elements
                .iter()
                .all(|h| self.contains(group.conjugate(h, g)))
        });
        Subgroup {
            elements: ElementSet::from_indices(group.order(), members),
        }
    }

    /// Greedy generating set: scan elements in index order and keep those
    /// not yet generated. Depends only on the element set.
    pub fn generators(&self, group: &PermGroup) -> Vec<usize> {
        generating_set(group, &self.elements)
    }

    pub fn is_cyclic(&self, group: &PermGroup) -> bool {
        let n = self.order();
        self.elements.iter().any(|x| group.element_order(x) == n)
    }

    /// Generators in 1-based cycle notation, separated by `; `.
    pub fn describe(&self, group: &PermGroup) -> String {
        let gens = self.generators(group);
        if gens.is_empty() {
            return "()".to_string();
        }
        let mut out = String::new();
        for (i, g) in gens.iter().enumerate() {
            if i > 0 {
                out.push_str("; ");
            }
            let _ = write!(out, "{}", group.element(*g));
        }
        out
    }
}

pub(crate) fn generating_set(group: &PermGroup, set: &ElementSet) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span = ElementSet::from_indices(group.order(), [0]);
    for x in set.iter() {
        if !span.contains(x) {
            gens.push(x);
            span = group.closure(gens.iter().copied());
            if span.len() == set.len() {
                break;
            }
        }
    }
    gens
}
