//! Exact linear algebra: arbitrary-precision integer matrices, division-free
//! characteristic polynomials, and packed GF(2) matrices.

mod charpoly;
mod gf2;
mod int_matrix;
mod poly;

pub use charpoly::{charpoly_berkowitz, charpoly_dynkin, charpoly_path};
pub use gf2::{intersect, span_dim, BitMatrix, BitVec};
pub use int_matrix::IntMatrix;
pub use poly::Polynomial;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("inner dimensions do not agree: {lhs_rows}x{lhs_cols} vs {rhs_rows}x{rhs_cols}")]
    DimensionMismatch {
        lhs_rows: usize,
        lhs_cols: usize,
        rhs_rows: usize,
        rhs_cols: usize,
    },
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("vector length {len} does not match {cols} columns")]
    VectorLength { len: usize, cols: usize },
    #[error("path characteristic polynomial requires n >= 1, got {0}")]
    PathOrder(usize),
    #[error("Dynkin characteristic polynomial requires n >= 4, got {0}")]
    DynkinOrder(usize),
    #[error("ambient dimensions do not agree: {0} vs {1}")]
    AmbientMismatch(usize, usize),
}
