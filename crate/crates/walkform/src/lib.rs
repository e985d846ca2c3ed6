//! Exact integer linear algebra for walk matrices of graphs.
//!
//! Given a graph with adjacency matrix `A`, the walk matrix is
//! `W = [e, Ae, ..., A^{n-1}e]` with `e` the all-one vector; its entry
//! `(i, j)` counts walks of length `j` starting at vertex `i`. This crate
//! builds walk matrices exactly (entries grow like `2^n`), computes their
//! Smith normal forms and finite-field ranks, and mechanically verifies a
//! family of identities of the Dynkin graph `D_n`: the Smith normal form
//! pattern, the GF(2) rank bound, the intertwining relation `AC = CB`,
//! explicit eigenvectors, and the trigonometric product identities behind
//! the determinant of the truncated walk matrix.
//!
//! Everything outside the spectral checks is exact arbitrary-precision
//! arithmetic; the spectral checks use hardware doubles with documented
//! tolerances. All operations are pure functions of immutable inputs and
//! safe to call from many threads.

pub mod graph;
pub mod graph6;
pub mod linalg;
pub mod smith;
pub mod verify;
pub mod walk;

pub use graph::{Graph, GraphError, MAX_VERTICES};
pub use graph6::{emit_graph6, parse_graph6};
pub use linalg::{
    charpoly_berkowitz, charpoly_dynkin, charpoly_path, intersect, span_dim, BitMatrix, BitVec,
    IntMatrix, LinalgError, Polynomial,
};
pub use smith::{minor_gcd_oracle, smith_normal_form, SmithDecomposition, SmithError};
pub use verify::{
    claim_jobs, run_job, verify_all, Claim, Job, JobParam, SweepConfig, VerificationReport,
    VerifyError,
};
pub use walk::{
    rank2_walk, truncated_walk_dynkin, walk_matrix, walk_matrix_of_matrix, Provenance, WalkError,
    WalkMatrix,
};
