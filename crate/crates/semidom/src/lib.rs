//! Exact domination-type computations on small graphs.
//!
//! The crate computes the plain, total, and semitotal domination numbers of a
//! graph, the semitotal domination multisubdivision number (the least number
//! of subdivisions of a single edge that raises the semitotal domination
//! number), and builds the operation-closed labeled-tree families that
//! characterize the extremal cases:
//!
//! * trees whose multisubdivision number is 3 (family `U`),
//! * trees with `gamma_t2 = 2*gamma - 1` (family `T`),
//! * trees with `gamma_t = 2*gamma_t2 - 1` (family `T1`).
//!
//! A verification harness sweeps every supported claim over exhaustive
//! desk-scale instance sets (all trees up to an order bound, parametric
//! families, and optional graph6 streams) and reports machine-readable
//! verdicts. See the `verify` module for the claim registry.
//!
//! With the default `parallel` feature, instance sweeps and per-edge scans
//! fan out through rayon; without it everything runs serially with identical
//! results.

pub mod canon;
pub mod families;
pub mod format;
pub mod graph;
pub mod msd;
mod par;
pub mod solver;
pub mod trees;
pub mod verify;

pub use canon::{canonical_code, CanonicalCode};
pub use graph::{named, Edge, Graph, GraphError, StructuralProfile, MAX_VERTICES};
pub use msd::{classify_tree, msd_semitotal, MsdError, MsdResult, TreeClass, DEFAULT_K_MAX};
pub use solver::{
    check_set, is_almost_semitotal, min_almost_semitotal, min_set, min_value, DominationVariant,
    SolveError, SolveResult,
};
pub use trees::enumerate_trees;
pub use verify::{run_verification, ClaimId, VerificationReport, Verdict, VerifyOptions};
