//! Finite permutation groups and their subgroup combinatorics.

pub mod catalog;
mod elements;
mod family;
mod lattice;
mod perm;
mod perm_group;
mod residual;
pub mod spec_file;
mod subgroup;

pub use elements::ElementSet;
pub use family::{family_from_predicate, FamilyKind, SubgroupFamily};
pub use lattice::{canonical_conjugate, subgroup_classes, SubgroupClass, SubgroupLattice};
pub use perm::Permutation;
pub use perm_group::{Caps, PermGroup, MAX_ORDER_ENV};
pub use residual::{is_p_perfect, is_p_subnormal, is_prime, p_residual, prime_divisors, Prime};
pub use subgroup::Subgroup;
