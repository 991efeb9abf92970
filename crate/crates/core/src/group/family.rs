use std::collections::BTreeSet;

use super::lattice::SubgroupLattice;
use crate::error::{Error, Result};

/// Which family of subgroups to build relative to a normal subgroup `N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    /// `F(N) = {K : K ∩ N = 1}`.
    NFree,
    /// `F[⊉N] = {K : K ⊉ N}`.
    NotContaining,
}

/// A set of subgroup classes closed under subconjugacy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupFamily {
    members: BTreeSet<usize>,
}

impl SubgroupFamily {
    /// Class indices (into the lattice) belonging to the family.
    pub fn members(&self) -> &BTreeSet<usize> {
        &self.members
    }

    pub fn contains(&self, class: usize) -> bool {
        self.members.contains(&class)
    }

    /// Checks closure under subconjugacy against the lattice.
    pub fn is_subconjugacy_closed(&self, lattice: &SubgroupLattice) -> bool {
        self.members.iter().all(|&k| {
            (0..lattice.len())
                .filter(|&l| lattice.is_subconjugate(l, k))
                .all(|l| self.members.contains(&l))
        })
    }
}

/// Builds `F(N)` or `F[⊉N]` for the normal class `normal`.
pub fn family_from_predicate(
    lattice: &SubgroupLattice,
    normal: usize,
    kind: FamilyKind,
) -> Result<SubgroupFamily> {
    let n_class = lattice.class(normal);
    if !n_class.is_normal() {
        return Err(Error::NotNormal);
    }
    let n = n_class.representative();
    let members = (0..lattice.len())
        .filter(|&k| match kind {
            FamilyKind::NFree => lattice
                .conjugates(k)
                .iter()
                .all(|c| c.intersection(n).is_trivial()),
            FamilyKind::NotContaining => lattice.conjugates(k).iter().all(|c| !n.is_subgroup_of(c)),
        })
        .collect();
    Ok(SubgroupFamily { members })
}
