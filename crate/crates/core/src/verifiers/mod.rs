//! Executable checks of the structural lemmas and inequalities on concrete graphs.

mod checks;
mod decompose;

pub use checks::{
    check_eq4, check_lemma21, check_lemma25, check_lemma26, check_lemma27, check_theorem_values, default_beta,
    edge_rotation, eq1_identity, s_minus_threshold, zeta_additivity_gap, Hypothesis, IdentityCheck, InequalityCheck,
    Rotation, TheoremCase, Value, FLOAT_MARGIN, IDENTITY_TOL, ROTATION_MARGIN,
};
pub use decompose::{
    classify_component, decompose_at, decompose_with, ComponentClass, DecompositionReport, NeighbourComponent,
};
