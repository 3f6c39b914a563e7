//! Spectral extremal graph theory toolkit.
//!
//! Graphs are bitset adjacency rows (up to 512 vertices). The crate covers
//! Perron roots and exact characteristic polynomials, θ(1,p,q) detection,
//! the named extremal families, isomorph-free enumeration by edge count and
//! checkers for the inequalities used around θ(1,3,3)-free graphs.

pub mod enumerate;
pub mod error;
pub mod families;
pub mod graph;
mod graph6;
pub mod oracles;
pub mod random;
pub mod refine;
pub mod report;
pub mod spectral;
pub mod theta;
pub mod verifiers;

pub use enumerate::{canonical_form, enumerate_by_size, extremal_search, CanonicalForm, ExtremalReport};
pub use error::{GraphError, SpectralError};
pub use families::FamilySpec;
pub use graph::{Bipartition, Graph, VertexSet, MAX_VERTICES};
pub use spectral::{Polynomial, QuadExt, SpectralCertificate};
pub use theta::{contains_theta, is_theta133_free, ThetaWitness};
