//! Canonical forms, isomorph-free enumeration by size and extremal search.

mod cache;
mod canon;
mod generate;
mod search;

pub use cache::{cached_search, CacheLookup, SearchCache};
pub use canon::{canonical_form, canonical_labeling, is_isomorphic, CanonicalForm, CANON_MAX_VERTICES};
pub use generate::{enumerate_by_size, enumerate_canonical, enumerate_canonical_with_budget, ENUMERATION_BUDGET};
pub use search::{
    extremal_search, extremal_search_with_budget, free_survivors, ExtremalReport, RuntimeStats, ARGMAX_TOL,
    DETECTOR_VERSION, SCOPE_NOTE,
};
