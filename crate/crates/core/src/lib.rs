//! Circulant graphs `C_n(R)`, their multiplier (Type-1) and rotation
//! (Type-2) isomorphisms, the groups these form and the families of
//! Type-2 isomorphic graphs, with independent oracles for certification.

pub mod error;
pub mod families;
pub mod graph;
pub mod groups;
pub mod oracle;
pub mod theta;
pub mod type1;

pub use error::{Error, Result};
pub use graph::{
    edge_set, make_circulant, period_cycle_stats, reflexive_reduce, scale, symmetric_closure,
    CirculantGraph, CycleStats, DirectedJumpSet, JumpSet, LabeledGraph,
};
pub use groups::{
    appended_jump_check, census, census_with, t2_group, t2_set, t2_set_equality, v_group, v_set,
    AnchorFilter, CensusClass, CensusConfig, CensusSummary, OrbitGroup, Type2Set, VSet,
};
pub use theta::{
    classification_table, classify_t, detect_circulant, theta_image, theta_params, theta_vertex,
    Rotation, TClassification, ThetaParams, Verdict,
};
pub use type1::{phi_apply, type1_group, type1_set, type1_set_equality, type1_witnesses, units};
