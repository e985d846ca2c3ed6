//! Walk matrices of graphs and of square matrices, and the truncated walk
//! matrix of the Dynkin graph.

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::linalg::{IntMatrix, LinalgError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WalkError {
    #[error("truncated walk matrix requires n divisible by 4, got {0}")]
    NotMultipleOfFour(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    /// Built from a graph adjacency matrix.
    Graph,
    /// Built from an arbitrary square integer matrix.
    Matrix,
}

/// The matrix `[e, Me, ..., M^{n-1}e]` with `e` the all-one vector.
///
/// Column `j` (0-indexed) is `M^j e`; for a graph, entry `(i, j)` counts the
/// walks of length `j` starting at vertex `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkMatrix {
    matrix: IntMatrix,
    provenance: Provenance,
}

impl WalkMatrix {
    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> IntMatrix {
        self.matrix
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }
}

/// Columns are iterated as matrix-vector products, which keeps the total work
/// cubic even though entries grow like `2^n`.
fn walk_columns(m: &IntMatrix, count: usize) -> Vec<Vec<BigInt>> {
    let n = m.rows();
    let mut cols = Vec::with_capacity(count);
    let mut v = vec![BigInt::one(); n];
    for _ in 0..count {
        cols.push(v.clone());
        v = m.mul_vec(&v).expect("square by construction");
    }
    cols
}

fn assemble(cols: &[Vec<BigInt>], rows: usize) -> IntMatrix {
    IntMatrix::from_fn(rows, cols.len(), |i, j| cols[j][i].clone())
}

/// Walk matrix of a graph.
pub fn walk_matrix(g: &Graph) -> WalkMatrix {
    let a = g.adjacency_matrix();
    let cols = walk_columns(&a, g.vertex_count());
    WalkMatrix {
        matrix: assemble(&cols, g.vertex_count()),
        provenance: Provenance::Graph,
    }
}

/// Walk matrix of an arbitrary square integer matrix.
pub fn walk_matrix_of_matrix(m: &IntMatrix) -> Result<WalkMatrix, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let cols = walk_columns(m, m.rows());
    Ok(WalkMatrix {
        matrix: assemble(&cols, m.rows()),
        provenance: Provenance::Matrix,
    })
}

/// Truncated walk matrix of the Dynkin graph: `[e, Ae, ..., A^{n-3}e]` with
/// the first and last rows removed. Defined for the canonical labeling only,
/// hence exposed as a Dynkin-specific operation.
pub fn truncated_walk_dynkin(n: usize) -> Result<IntMatrix, WalkError> {
    if !n.is_multiple_of(4) {
        return Err(WalkError::NotMultipleOfFour(n));
    }
    let g = Graph::dynkin_d(n)?;
    let a = g.adjacency_matrix();
    let cols = walk_columns(&a, n - 2);
    Ok(IntMatrix::from_fn(n - 2, n - 2, |i, j| {
        cols[j][i + 1].clone()
    }))
}

/// Rank of the walk matrix over GF(2).
pub fn rank2_walk(g: &Graph) -> usize {
    walk_matrix(g).matrix().to_bit_matrix().rank()
}
