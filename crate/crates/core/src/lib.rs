//! Roots of oriented reduction graphs.
//!
//! Objects and their simplifying moves form a directed graph. This crate
//! computes roots (irreducible results reachable by moves), synthesizes and
//! checks complexity functions, decides edge equivalence, and verifies on
//! concrete systems that a complexity function together with edge
//! equivalence forces every object to have exactly one root.
//!
//! Two combinatorial instances come with it: the red/green handle-graph
//! cutting calculus ([`handle`]) and orbifold colour admissibility
//! ([`color`]).

pub mod color;
pub mod complexity;
pub mod format;
pub mod gen;
pub mod handle;
pub mod roots;
pub mod system;

pub use color::{
    pair_admissible, profile_admissible, triple_admissible, Color, ColorError, IntersectionProfile,
};
pub use complexity::{
    check_complexity, synthesize_complexity, Complexity, ComplexityCheck, ComplexityError,
    ComplexityMap,
};
pub use handle::{
    admits_cutting, canonical_form, cut, cut_moves, edge_classes_at, full_cut, to_reduction_system,
    CanonicalCode, CutMove, CuttingSystem, Green, HandleError, HandleGraph,
};
pub use roots::{
    check_ee, edge_equivalence, elementary_equivalent, find_counterexample, roots, unique_root,
    verify_theorem, CfVerdict, EdgeEquivalence, EeVerdict, RootError, RootOutcome, RootReport,
    RootSet, RootTable,
};
pub use system::{Edge, EdgeId, ReductionSystem, SystemBuilder, SystemError, VertexId};
