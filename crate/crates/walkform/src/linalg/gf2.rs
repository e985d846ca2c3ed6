use std::fmt;

use num_bigint::BigInt;

use super::{IntMatrix, LinalgError};

const WORD_BITS: usize = 64;

/// GF(2) vector packed into machine words. Unused high bits of the last word
/// are kept zero so equality and zero tests work wordwise.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0; len.div_ceil(WORD_BITS)],
        }
    }

    /// The all-one vector.
    pub fn ones(len: usize) -> Self {
        let mut v = Self::zeros(len);
        for w in &mut v.words {
            *w = u64::MAX;
        }
        v.mask_tail();
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / WORD_BITS] >> (i % WORD_BITS) & 1 == 1
    }

    pub fn set(&mut self, i: usize, bit: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if bit {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Inner product over GF(2): parity of the AND.
    pub fn dot(&self, other: &BitVec) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Index of the lowest set bit.
    pub fn first_one(&self) -> Option<usize> {
        for (wi, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(wi * WORD_BITS + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn mask_tail(&mut self) {
        let rem = self.len % WORD_BITS;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    /// Concatenation, used to build Zassenhaus block rows.
    fn concat(&self, other: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.len + other.len);
        for i in 0..self.len {
            if self.get(i) {
                out.set(i, true);
            }
        }
        for i in 0..other.len {
            if other.get(i) {
                out.set(self.len + i, true);
            }
        }
        out
    }

    fn slice(&self, start: usize, len: usize) -> BitVec {
        let mut out = BitVec::zeros(len);
        for i in 0..len {
            if self.get(start + i) {
                out.set(i, true);
            }
        }
        out
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", u8::from(self.get(i)))?;
        }
        Ok(())
    }
}

/// GF(2) matrix with word-packed rows for fast elimination.
#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BitVec>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BitMatrix {
            rows,
            cols,
            data: vec![BitVec::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Panics on ragged rows.
    pub fn from_rows(rows: Vec<BitVec>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, BitVec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        BitMatrix {
            rows: r,
            cols: c,
            data: rows,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, bit: bool) {
        self.data[i].set(j, bit);
    }

    pub fn row(&self, i: usize) -> &BitVec {
        &self.data[i]
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) {
                    t.set(j, i, true);
                }
            }
        }
        t
    }

    /// Matrix-vector product over GF(2).
    pub fn mul_vec(&self, v: &BitVec) -> Result<BitVec, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::VectorLength {
                len: v.len(),
                cols: self.cols,
            });
        }
        let mut out = BitVec::zeros(self.rows);
        for i in 0..self.rows {
            out.set(i, self.data[i].dot(v));
        }
        Ok(out)
    }

    /// Matrix product over GF(2): each output row is the XOR of the rhs rows
    /// selected by the lhs row.
    pub fn matmul(&self, rhs: &BitMatrix) -> Result<BitMatrix, LinalgError> {
        if self.cols != rhs.rows {
            return Err(LinalgError::DimensionMismatch {
                lhs_rows: self.rows,
                lhs_cols: self.cols,
                rhs_rows: rhs.rows,
                rhs_cols: rhs.cols,
            });
        }
        let mut out = BitMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) {
                    out.data[i].xor_assign(&rhs.data[j]);
                }
            }
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        reduced_echelon(self.data.clone()).1.len()
    }

    /// Basis of the right kernel; its size is `cols - rank`.
    pub fn kernel(&self) -> Vec<BitVec> {
        let (reduced, pivots) = reduced_echelon(self.data.clone());
        let pivot_set: Vec<Option<usize>> = {
            let mut set = vec![None; self.cols];
            for (r, &c) in pivots.iter().enumerate() {
                set[c] = Some(r);
            }
            set
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut v = BitVec::zeros(self.cols);
            v.set(free, true);
            for (r, &c) in pivots.iter().enumerate() {
                if reduced[r].get(free) {
                    v.set(c, true);
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Basis of the column span, as vectors in GF(2)^rows.
    pub fn column_space(&self) -> Vec<BitVec> {
        let (reduced, pivots) = reduced_echelon(self.transpose().data);
        reduced.into_iter().take(pivots.len()).collect()
    }

    pub fn to_int_matrix(&self) -> IntMatrix {
        IntMatrix::from_fn(self.rows, self.cols, |i, j| BigInt::from(self.get(i, j)))
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.rows, self.cols)?;
        for row in &self.data {
            writeln!(f, "  {row:?}")?;
        }
        write!(f, "]")
    }
}

/// Row-reduces into reduced echelon form; returns the rows (pivot rows first)
/// and the pivot column of each pivot row.
fn reduced_echelon(mut rows: Vec<BitVec>) -> (Vec<BitVec>, Vec<usize>) {
    let ncols = rows.first().map_or(0, BitVec::len);
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&i| rows[i].get(col)) else {
            continue;
        };
        rows.swap(rank, pivot);
        let pivot_row = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && row.get(col) {
                row.xor_assign(&pivot_row);
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    (rows, pivots)
}

/// Dimension of the span of the given vectors.
pub fn span_dim(vectors: &[BitVec]) -> usize {
    reduced_echelon(vectors.to_vec()).1.len()
}

/// Basis of the intersection of two subspaces given by spanning sets, via the
/// Zassenhaus block trick: eliminate rows `[u|u]` and `[v|0]`; rows whose left
/// half vanished carry an intersection basis in their right half.
pub fn intersect(u: &[BitVec], v: &[BitVec]) -> Result<Vec<BitVec>, LinalgError> {
    let dim = u
        .first()
        .or_else(|| v.first())
        .map_or(0, BitVec::len);
    for w in u.iter().chain(v) {
        if w.len() != dim {
            return Err(LinalgError::AmbientMismatch(dim, w.len()));
        }
    }
    let mut block: Vec<BitVec> = Vec::with_capacity(u.len() + v.len());
    for w in u {
        block.push(w.concat(w));
    }
    for w in v {
        block.push(w.concat(&BitVec::zeros(dim)));
    }
    let (reduced, pivots) = reduced_echelon(block);
    let mut basis = Vec::new();
    for (r, &c) in pivots.iter().enumerate() {
        if c >= dim {
            basis.push(reduced[r].slice(dim, dim));
        }
    }
    Ok(basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::walk::walk_matrix;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_bit_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> BitMatrix {
        let mut m = BitMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, rng.random::<bool>());
            }
        }
        m
    }

    #[test]
    fn rank_identity() {
        assert_eq!(BitMatrix::identity(8).rank(), 8);
    }

    #[test]
    fn rank_all_ones() {
        let mut m = BitMatrix::zeros(4, 4);
        for i in 0..4 {
            for j in 0..4 {
                m.set(i, j, true);
            }
        }
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn walk_matrix_of_d8_mod_two() {
        let g = Graph::dynkin_d(8).unwrap();
        let w = walk_matrix(&g).matrix().to_bit_matrix();
        assert_eq!(w.rank(), 3);
        assert_eq!(span_dim(&w.column_space()), 3);
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        assert!(BitMatrix::identity(3).kernel().is_empty());
    }

    #[test]
    fn kernel_of_all_ones() {
        let mut m = BitMatrix::zeros(3, 3);
        for i in 0..3 {
            for j in 0..3 {
                m.set(i, j, true);
            }
        }
        let basis = m.kernel();
        assert_eq!(basis.len(), 2);
        for v in &basis {
            assert!(m.mul_vec(v).unwrap().is_zero());
        }
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let rows = rng.random_range(1..8);
            let cols = rng.random_range(1..8);
            let m = random_bit_matrix(&mut rng, rows, cols);
            let basis = m.kernel();
            assert_eq!(basis.len(), m.cols() - m.rank());
            for v in &basis {
                assert!(m.mul_vec(v).unwrap().is_zero());
            }
            assert_eq!(span_dim(&basis), basis.len());
        }
    }

    #[test]
    fn dynkin_kernel_is_spanned_by_alpha_and_beta() {
        for n in (4..=16).step_by(2) {
            let a = Graph::dynkin_d(n).unwrap().adjacency_f2();
            let kernel = a.kernel();
            assert_eq!(kernel.len(), 2, "n={n}");
            let mut alpha = BitVec::zeros(n);
            alpha.set(0, true);
            alpha.set(1, true);
            let mut beta = BitVec::zeros(n);
            for i in (1..n).step_by(2) {
                beta.set(i, true);
            }
            assert!(a.mul_vec(&alpha).unwrap().is_zero(), "n={n}");
            assert!(a.mul_vec(&beta).unwrap().is_zero(), "n={n}");
        }
    }

    #[test]
    fn column_space_of_zero_matrix() {
        assert!(BitMatrix::zeros(4, 3).column_space().is_empty());
    }

    #[test]
    fn column_space_dimension_equals_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let rows = rng.random_range(1..10);
            let cols = rng.random_range(1..10);
            let m = random_bit_matrix(&mut rng, rows, cols);
            assert_eq!(m.column_space().len(), m.rank());
        }
    }

    #[test]
    fn intersect_disjoint_axes() {
        let mut e1 = BitVec::zeros(3);
        e1.set(0, true);
        let mut e2 = BitVec::zeros(3);
        e2.set(1, true);
        assert!(intersect(&[e1], &[e2]).unwrap().is_empty());
    }

    #[test]
    fn intersect_with_self_preserves_dimension() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..30 {
            let rows = rng.random_range(1..7);
            let m = random_bit_matrix(&mut rng, rows, 8);
            let u: Vec<BitVec> = (0..m.rows()).map(|i| m.row(i).clone()).collect();
            let inter = intersect(&u, &u).unwrap();
            assert_eq!(inter.len(), span_dim(&u));
        }
    }

    #[test]
    fn intersect_rejects_mixed_ambient() {
        let u = [BitVec::zeros(3)];
        let v = [BitVec::zeros(4)];
        assert!(matches!(
            intersect(&u, &v),
            Err(LinalgError::AmbientMismatch(..))
        ));
    }

    #[test]
    fn dimension_formula() {
        // dim U + dim V = dim(U /\ V) + dim(U + V) on random subspaces.
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..200 {
            let dim = rng.random_range(1..=10usize);
            let u: Vec<BitVec> = (0..rng.random_range(0..=dim))
                .map(|_| {
                    let mut v = BitVec::zeros(dim);
                    for j in 0..dim {
                        v.set(j, rng.random::<bool>());
                    }
                    v
                })
                .collect();
            let v: Vec<BitVec> = (0..rng.random_range(0..=dim))
                .map(|_| {
                    let mut w = BitVec::zeros(dim);
                    for j in 0..dim {
                        w.set(j, rng.random::<bool>());
                    }
                    w
                })
                .collect();
            let inter = intersect(&u, &v).unwrap();
            let mut sum = u.clone();
            sum.extend(v.iter().cloned());
            assert_eq!(
                span_dim(&u) + span_dim(&v),
                inter.len() + span_dim(&sum)
            );
        }
    }

    #[test]
    fn intersection_members_lie_in_both_spans() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..50 {
            let dim = 9;
            let mk = |rng: &mut ChaCha8Rng| -> Vec<BitVec> {
                (0..rng.random_range(1..=5usize))
                    .map(|_| {
                        let mut v = BitVec::zeros(dim);
                        for j in 0..dim {
                            v.set(j, rng.random::<bool>());
                        }
                        v
                    })
                    .collect()
            };
            let u = mk(&mut rng);
            let v = mk(&mut rng);
            for w in intersect(&u, &v).unwrap() {
                // membership: appending w must not grow the span
                let mut ue = u.clone();
                ue.push(w.clone());
                assert_eq!(span_dim(&ue), span_dim(&u));
                let mut ve = v.clone();
                ve.push(w);
                assert_eq!(span_dim(&ve), span_dim(&v));
            }
        }
    }
}
