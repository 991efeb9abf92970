//! Spectral spaces on which loci live: finite posets and the chromatic model.

mod chromatic;
mod poset;

pub use chromatic::{
    sh_localization_locus, ChromaticDocument, ChromaticPoint, ChromaticSpace, ChromaticSubset,
    Height, Threshold,
};
pub use poset::{
    finite_localization_locus, is_clopen, largest_specialization_closed_inside, FinitePoset,
    Flavor, PosetSubset, SubsetDocument,
};
