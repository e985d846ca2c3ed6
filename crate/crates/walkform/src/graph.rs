//! Graph construction: Dynkin graphs, paths, seeded random graphs, and
//! arbitrary graphs from edge lists or graph6 text.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::linalg::{BitMatrix, IntMatrix};

/// Dense adjacency storage is trivially safe up to this vertex count.
pub const MAX_VERTICES: usize = 4096;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("{family} requires at least {min} vertices, got {got}")]
    TooFewVertices {
        family: &'static str,
        min: usize,
        got: usize,
    },
    #[error("vertex count {0} exceeds the cap of {MAX_VERTICES}")]
    TooManyVertices(usize),
    #[error("edge probability must lie in [0, 1], got {0}")]
    BadProbability(f64),
    #[error("edge ({0}, {1}) is out of range for {2} vertices")]
    EdgeOutOfRange(usize, usize, usize),
    #[error("self-loop at vertex {0} is not allowed")]
    SelfLoop(usize),
    #[error("graph6 input is empty")]
    Graph6Empty,
    #[error("graph6 byte {0:#04x} is outside the printable range 63..=126")]
    Graph6InvalidByte(u8),
    #[error("graph6 bit stream is truncated: need {expected} body bytes, got {got}")]
    Graph6Truncated { expected: usize, got: usize },
    #[error("graph6 input has {got} body bytes but only {expected} are needed")]
    Graph6TrailingData { expected: usize, got: usize },
    #[error("graph6 header is malformed")]
    Graph6BadHeader,
}

/// Simple undirected graph on vertices `0..n`.
///
/// The adjacency relation is symmetric and irreflexive by construction, and a
/// graph is immutable once built, so values can be shared freely across
/// threads.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: BitMatrix,
}

impl Graph {
    fn empty(n: usize, family: &'static str, min: usize) -> Result<Graph, GraphError> {
        if n < min {
            return Err(GraphError::TooFewVertices { family, min, got: n });
        }
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        Ok(Graph {
            n,
            adj: BitMatrix::zeros(n, n),
        })
    }

    fn link(&mut self, i: usize, j: usize) {
        self.adj.set(i, j, true);
        self.adj.set(j, i, true);
    }

    /// The Dynkin graph `D_n`: vertices 0 and 1 are pendant at vertex 2, and
    /// vertices `2..n` form a path.
    pub fn dynkin_d(n: usize) -> Result<Graph, GraphError> {
        let mut g = Self::empty(n, "dynkin_d", 4)?;
        g.link(0, 2);
        g.link(1, 2);
        for i in 2..n - 1 {
            g.link(i, i + 1);
        }
        Ok(g)
    }

    /// The path graph `P_n`.
    pub fn path(n: usize) -> Result<Graph, GraphError> {
        let mut g = Self::empty(n, "path", 1)?;
        for i in 0..n - 1 {
            g.link(i, i + 1);
        }
        Ok(g)
    }

    /// Erdos-Renyi sample `G(n, p)`, deterministic for a given seed.
    pub fn random(n: usize, p: f64, seed: u64) -> Result<Graph, GraphError> {
        if !(0.0..=1.0).contains(&p) {
            return Err(GraphError::BadProbability(p));
        }
        let mut g = Self::empty(n, "random", 1)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for i in 0..n {
            for j in i + 1..n {
                if rng.random::<f64>() < p {
                    g.link(i, j);
                }
            }
        }
        Ok(g)
    }

    /// Builds a graph from an explicit edge list.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut g = Self::empty(n, "from_edges", 1)?;
        for &(i, j) in edges {
            if i >= n || j >= n {
                return Err(GraphError::EdgeOutOfRange(i, j, n));
            }
            if i == j {
                return Err(GraphError::SelfLoop(i));
            }
            g.link(i, j);
        }
        Ok(g)
    }

    pub(crate) fn from_adjacency_bits(n: usize, adj: BitMatrix) -> Graph {
        debug_assert_eq!(adj.rows(), n);
        debug_assert_eq!(adj.cols(), n);
        Graph { n, adj }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj.get(i, j)
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj.row(i).count_ones()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|i| self.degree(i)).sum::<usize>() / 2
    }

    /// Edges as sorted pairs `(i, j)` with `i < j`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.has_edge(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Adjacency matrix over the integers.
    pub fn adjacency_matrix(&self) -> IntMatrix {
        IntMatrix::from_fn(self.n, self.n, |i, j| BigInt::from(self.has_edge(i, j)))
    }

    /// Adjacency matrix over GF(2).
    pub fn adjacency_f2(&self) -> BitMatrix {
        self.adj.clone()
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dynkin_four() {
        let g = Graph::dynkin_d(4).unwrap();
        assert_eq!(g.edges(), vec![(0, 2), (1, 2), (2, 3)]);
        let degrees: Vec<usize> = (0..4).map(|i| g.degree(i)).collect();
        assert_eq!(degrees, vec![1, 1, 3, 1]);
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn dynkin_six() {
        let g = Graph::dynkin_d(6).unwrap();
        assert_eq!(g.edges(), vec![(0, 2), (1, 2), (2, 3), (3, 4), (4, 5)]);
        assert_eq!(g.edge_count(), 5);
    }

    #[test]
    fn dynkin_rejects_small_n() {
        assert!(matches!(
            Graph::dynkin_d(3),
            Err(GraphError::TooFewVertices { .. })
        ));
    }

    #[test]
    fn dynkin_degree_profile() {
        // One vertex of degree 3 (the branch vertex) and three leaves.
        for n in 5..=20 {
            let g = Graph::dynkin_d(n).unwrap();
            let degrees: Vec<usize> = (0..n).map(|i| g.degree(i)).collect();
            assert_eq!(degrees.iter().filter(|&&d| d == 3).count(), 1, "n={n}");
            assert_eq!(degrees.iter().filter(|&&d| d == 1).count(), 3, "n={n}");
            assert_eq!(g.degree(2), 3);
            assert_eq!(g.edge_count(), n - 1);
        }
    }

    #[test]
    fn path_small() {
        assert_eq!(Graph::path(1).unwrap().edge_count(), 0);
        assert_eq!(Graph::path(2).unwrap().edges(), vec![(0, 1)]);
        let p5 = Graph::path(5).unwrap();
        assert_eq!(p5.edge_count(), 4);
        let degrees: Vec<usize> = (0..5).map(|i| p5.degree(i)).collect();
        assert_eq!(degrees, vec![1, 2, 2, 2, 1]);
        assert!(Graph::path(0).is_err());
    }

    #[test]
    fn random_endpoints() {
        let empty = Graph::random(5, 0.0, 42).unwrap();
        assert_eq!(empty.edge_count(), 0);
        let complete = Graph::random(5, 1.0, 42).unwrap();
        assert_eq!(complete.edge_count(), 10);
    }

    #[test]
    fn random_is_deterministic() {
        let a = Graph::random(12, 0.37, 99).unwrap();
        let b = Graph::random(12, 0.37, 99).unwrap();
        assert_eq!(a, b);
        let c = Graph::random(12, 0.37, 100).unwrap();
        assert_ne!(a, c); // overwhelmingly likely for this seed pair
    }

    #[test]
    fn random_rejects_bad_probability() {
        assert!(matches!(
            Graph::random(5, -0.1, 0),
            Err(GraphError::BadProbability(_))
        ));
        assert!(matches!(
            Graph::random(5, 1.5, 0),
            Err(GraphError::BadProbability(_))
        ));
        assert!(matches!(
            Graph::random(5, f64::NAN, 0),
            Err(GraphError::BadProbability(_))
        ));
    }

    #[test]
    fn vertex_cap_enforced() {
        assert!(matches!(
            Graph::path(MAX_VERTICES + 1),
            Err(GraphError::TooManyVertices(_))
        ));
        assert!(Graph::path(MAX_VERTICES).is_ok());
    }

    #[test]
    fn from_edges_validation() {
        assert!(matches!(
            Graph::from_edges(3, &[(0, 3)]),
            Err(GraphError::EdgeOutOfRange(..))
        ));
        assert!(matches!(
            Graph::from_edges(3, &[(1, 1)]),
            Err(GraphError::SelfLoop(_))
        ));
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(g.edges(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn adjacency_is_symmetric_and_irreflexive() {
        let g = Graph::random(20, 0.5, 7).unwrap();
        let a = g.adjacency_matrix();
        assert_eq!(a, a.transpose());
        for i in 0..20 {
            assert!(!g.has_edge(i, i));
        }
    }
}
