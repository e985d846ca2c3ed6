use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{BitMatrix, LinalgError};

/// Dense matrix of arbitrary-precision integers, row-major.
///
/// Walk-matrix entries grow like `2^n`, so every operation here is exact;
/// there is no overflow to reason about.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, data }
    }

    /// Builds a matrix from machine-integer rows. Panics on ragged input.
    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self::from_fn(r, c, |i, j| BigInt::from(rows[i][j]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    /// Exact matrix product.
    pub fn matmul(&self, rhs: &IntMatrix) -> Result<IntMatrix, LinalgError> {
        if self.cols != rhs.rows {
            return Err(LinalgError::DimensionMismatch {
                lhs_rows: self.rows,
                lhs_cols: self.cols,
                rhs_rows: rhs.rows,
                rhs_cols: rhs.cols,
            });
        }
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let t = a * &rhs[(k, j)];
                    out[(i, j)] += t;
                }
            }
        }
        Ok(out)
    }

    /// Exact matrix-vector product.
    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::VectorLength {
                len: v.len(),
                cols: self.cols,
            });
        }
        let mut out = vec![BigInt::zero(); self.rows];
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[i] += &self[(i, j)] * &v[j];
            }
        }
        Ok(out)
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    ///
    /// Pivoting takes the first nonzero entry in each column; row swaps are
    /// tracked by sign. Every interior division is exact.
    pub fn det_bareiss(&self) -> Result<BigInt, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut m = self.data.clone();
        let mut negated = false;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            let Some(p) = (k..n).find(|&i| !m[i * n + k].is_zero()) else {
                return Ok(BigInt::zero());
            };
            if p != k {
                for j in 0..n {
                    m.swap(k * n + j, p * n + j);
                }
                negated = !negated;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = &m[i * n + j] * &m[k * n + k] - &m[i * n + k] * &m[k * n + j];
                    m[i * n + j] = t / &prev;
                }
                m[i * n + k] = BigInt::zero();
            }
            prev = m[k * n + k].clone();
        }
        let det = m[n * n - 1].clone();
        Ok(if negated { -det } else { det })
    }

    /// Reduction mod 2. Together with [`BitMatrix::to_int_matrix`] this is
    /// idempotent on the GF(2) content.
    pub fn to_bit_matrix(&self) -> BitMatrix {
        let mut b = BitMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self[(i, j)].is_odd() {
                    b.set(i, j, true);
                }
            }
        }
        b
    }

    /// Submatrix on the given row and column indices (used by minor sweeps).
    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize]) -> IntMatrix {
        Self::from_fn(row_idx.len(), col_idx.len(), |i, j| {
            self[(row_idx[i], col_idx[j])].clone()
        })
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }
}

trait IsOdd {
    fn is_odd(&self) -> bool;
}

impl IsOdd for BigInt {
    fn is_odd(&self) -> bool {
        num_integer::Integer::is_odd(self)
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let widths: Vec<usize> = (0..self.cols)
            .map(|j| {
                (0..self.rows)
                    .map(|i| self[(i, j)].to_string().len())
                    .max()
                    .unwrap_or(1)
            })
            .collect();
        for i in 0..self.rows {
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:>width$}", self[(i, j)], width = widths[j])?;
            }
            if i + 1 < self.rows {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    /// Brute-force determinant by cofactor expansion along the first row.
    fn det_cofactor(m: &IntMatrix) -> BigInt {
        let n = m.rows();
        if n == 0 {
            return BigInt::one();
        }
        if n == 1 {
            return m[(0, 0)].clone();
        }
        let mut det = BigInt::zero();
        let rows: Vec<usize> = (1..n).collect();
        for j in 0..n {
            if m[(0, j)].is_zero() {
                continue;
            }
            let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
            let minor = det_cofactor(&m.submatrix(&rows, &cols));
            let term = &m[(0, j)] * minor;
            if j % 2 == 0 {
                det += term;
            } else {
                det -= term;
            }
        }
        det
    }

    /// Determinant mod a small prime by straightforward modular elimination.
    fn det_mod_p(m: &IntMatrix, p: u64) -> u64 {
        let n = m.rows();
        let pb = BigInt::from(p);
        let mut a: Vec<Vec<u64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let r = ((&m[(i, j)] % &pb) + &pb) % &pb;
                        u64::try_from(r).unwrap()
                    })
                    .collect()
            })
            .collect();
        let inv = |x: u64| -> u64 {
            // Fermat inverse; p is prime.
            let mut acc = 1u64;
            let mut base = x % p;
            let mut e = p - 2;
            while e > 0 {
                if e & 1 == 1 {
                    acc = acc * base % p;
                }
                base = base * base % p;
                e >>= 1;
            }
            acc
        };
        let mut det = 1u64;
        for k in 0..n {
            let Some(piv) = (k..n).find(|&i| !a[i][k].is_multiple_of(p)) else {
                return 0;
            };
            if piv != k {
                a.swap(piv, k);
                det = (p - det) % p;
            }
            det = det * a[k][k] % p;
            let vinv = inv(a[k][k]);
            for i in k + 1..n {
                let factor = a[i][k] * vinv % p;
                for j in k..n {
                    a[i][j] = (a[i][j] + (p - factor) * a[k][j]) % p;
                }
            }
        }
        det
    }

    fn random_matrix(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> IntMatrix {
        IntMatrix::from_fn(n, n, |_, _| big(rng.random_range(-bound..=bound)))
    }

    #[test]
    fn identity_is_neutral() {
        let m = IntMatrix::from_i64_rows(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]]);
        let i3 = IntMatrix::identity(3);
        assert_eq!(i3.matmul(&m).unwrap(), m);
        assert_eq!(m.matmul(&i3).unwrap(), m);
    }

    #[test]
    fn small_product_by_hand() {
        let m = IntMatrix::from_i64_rows(&[vec![0, 1], vec![2, 0]]);
        let sq = m.matmul(&m).unwrap();
        assert_eq!(sq, IntMatrix::from_i64_rows(&[vec![2, 0], vec![0, 2]]));
    }

    #[test]
    fn matmul_rejects_dimension_mismatch() {
        let a = IntMatrix::zeros(2, 3);
        let b = IntMatrix::zeros(2, 3);
        assert!(matches!(
            a.matmul(&b),
            Err(LinalgError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn mul_vec_star_kernel_vector() {
        // Adjacency of the 4-vertex graph with two pendants at vertex 3, applied
        // to (1,1,0,0): nonzero only at the branch vertex, and even there.
        let a = IntMatrix::from_i64_rows(&[
            vec![0, 0, 1, 0],
            vec![0, 0, 1, 0],
            vec![1, 1, 0, 1],
            vec![0, 0, 1, 0],
        ]);
        let v = vec![big(1), big(1), big(0), big(0)];
        assert_eq!(a.mul_vec(&v).unwrap(), vec![big(0), big(0), big(2), big(0)]);
    }

    #[test]
    fn det_identity() {
        assert_eq!(IntMatrix::identity(5).det_bareiss().unwrap(), big(1));
    }

    #[test]
    fn det_two_by_two() {
        let m = IntMatrix::from_i64_rows(&[vec![2, 4], vec![4, 2]]);
        assert_eq!(m.det_bareiss().unwrap(), big(-12));
    }

    #[test]
    fn det_rejects_non_square() {
        assert!(matches!(
            IntMatrix::zeros(2, 3).det_bareiss(),
            Err(LinalgError::NotSquare { .. })
        ));
    }

    #[test]
    fn det_matches_cofactor_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(0xba2e155);
        for _ in 0..50 {
            let m = random_matrix(&mut rng, 6, 9);
            assert_eq!(m.det_bareiss().unwrap(), det_cofactor(&m));
        }
    }

    #[test]
    fn det_consistent_mod_small_primes() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x9d2c5);
        for _ in 0..40 {
            let n = rng.random_range(1..=7);
            let m = random_matrix(&mut rng, n, 20);
            let det = m.det_bareiss().unwrap();
            for p in [3u64, 5, 7, 11] {
                let pb = BigInt::from(p);
                let expected = u64::try_from(((&det % &pb) + &pb) % &pb).unwrap();
                assert_eq!(det_mod_p(&m, p), expected, "p={p}");
            }
        }
    }

    #[test]
    fn mod2_round_trip_is_idempotent() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let m = random_matrix(&mut rng, 5, 50);
            let b = m.to_bit_matrix();
            assert_eq!(b.to_int_matrix().to_bit_matrix(), b);
        }
    }
}
