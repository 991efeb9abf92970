//! Compactness loci of geometric functors between tensor-triangulated
//! categories, computed combinatorially.
//!
//! The crate is organised bottom-up:
//!
//! - [`group`]: finite permutation groups, subgroup lattices up to
//!   conjugacy, `O^p` residuals and subgroup families.
//! - [`space`]: finite spectral spaces (as specialization posets) and the
//!   chromatic model of the spectrum of finite spectra.
//! - [`loci`]: loci inside the symbolic spectrum of `SH(G)^c` for inflation,
//!   geometric fixed points, orbit supports and `N`-free families.
//! - [`render`]: SVG / DOT / ASCII figures of loci and posets.
//! - [`oracle`] and [`verify`]: brute-force reference implementations and
//!   the suite that cross-checks the main algorithms against them.

pub mod error;
pub mod group;
pub mod loci;
pub mod oracle;
pub mod render;
pub mod space;
pub mod verify;

pub use error::{Error, Result};
