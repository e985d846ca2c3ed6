use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{IntMatrix, LinalgError, Polynomial};

/// Characteristic polynomial `det(xI - M)` by the Samuelson-Berkowitz
/// recursion.
///
/// Division-free, so it stays exact over the integers without any pivoting;
/// O(n^4) is fine at desk scale. The leading-principal-minor charpolys are
/// chained through lower-triangular Toeplitz products.
pub fn charpoly_berkowitz(m: &IntMatrix) -> Result<Polynomial, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    if n == 0 {
        return Ok(Polynomial::one());
    }
    // Descending coefficients of the charpoly of the leading r x r block.
    let mut c = vec![BigInt::one(), -m[(0, 0)].clone()];
    for r in 1..n {
        // Toeplitz column: 1, -a, -(S R), -(S A R), -(S A^2 R), ... where
        // A is the leading r x r block, R its border column, S its border row.
        let mut t = Vec::with_capacity(r + 2);
        t.push(BigInt::one());
        t.push(-m[(r, r)].clone());
        let mut w: Vec<BigInt> = (0..r).map(|i| m[(i, r)].clone()).collect();
        for step in 0..r {
            if step > 0 {
                let mut next = vec![BigInt::zero(); r];
                for (i, ni) in next.iter_mut().enumerate() {
                    for (j, wj) in w.iter().enumerate() {
                        *ni += &m[(i, j)] * wj;
                    }
                }
                w = next;
            }
            let mut dot = BigInt::zero();
            for (j, wj) in w.iter().enumerate() {
                dot += &m[(r, j)] * wj;
            }
            t.push(-dot);
        }
        let mut next = vec![BigInt::zero(); r + 2];
        for (i, ni) in next.iter_mut().enumerate() {
            for (j, cj) in c.iter().enumerate().take(i + 1) {
                if i - j < t.len() {
                    *ni += &t[i - j] * cj;
                }
            }
        }
        c = next;
    }
    c.reverse();
    Ok(Polynomial::from_coeffs(c))
}

/// Characteristic polynomial of the n-vertex path graph, by the three-term
/// recurrence `rho_n = x*rho_{n-1} - rho_{n-2}` with `rho_0 = 1`, `rho_1 = x`.
pub fn charpoly_path(n: usize) -> Result<Polynomial, LinalgError> {
    if n < 1 {
        return Err(LinalgError::PathOrder(n));
    }
    Ok(path_recurrence(n))
}

fn path_recurrence(n: usize) -> Polynomial {
    let mut prev = Polynomial::one();
    let mut cur = Polynomial::x();
    for _ in 1..n {
        let next = &cur.mul_x_pow(1) - &prev;
        prev = cur;
        cur = next;
    }
    if n == 0 {
        prev
    } else {
        cur
    }
}

/// Characteristic polynomial of the Dynkin graph `D_n` via the first-row
/// expansion `phi_n = x*rho_{n-1} - x*rho_{n-3}`.
pub fn charpoly_dynkin(n: usize) -> Result<Polynomial, LinalgError> {
    if n < 4 {
        return Err(LinalgError::DynkinOrder(n));
    }
    let diff = &path_recurrence(n - 1) - &path_recurrence(n - 3);
    Ok(diff.mul_x_pow(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use num_integer::Integer;
    use num_traits::Zero;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn zero_matrix() {
        let p = charpoly_berkowitz(&IntMatrix::zeros(2, 2)).unwrap();
        assert_eq!(p, Polynomial::from_i64(&[0, 0, 1])); // x^2
    }

    #[test]
    fn two_vertex_complete_graph() {
        let a = IntMatrix::from_i64_rows(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(
            charpoly_berkowitz(&a).unwrap(),
            Polynomial::from_i64(&[-1, 0, 1])
        );
    }

    #[test]
    fn dynkin_four() {
        let a = Graph::dynkin_d(4).unwrap().adjacency_matrix();
        let expected = Polynomial::from_i64(&[0, 0, -3, 0, 1]); // x^4 - 3x^2
        assert_eq!(charpoly_berkowitz(&a).unwrap(), expected);
        assert_eq!(charpoly_dynkin(4).unwrap(), expected);
    }

    #[test]
    fn path_small_cases() {
        assert_eq!(charpoly_path(2).unwrap(), Polynomial::from_i64(&[-1, 0, 1]));
        assert_eq!(
            charpoly_path(3).unwrap(),
            Polynomial::from_i64(&[0, -2, 0, 1])
        );
        assert!(charpoly_path(0).is_err());
    }

    #[test]
    fn recurrences_match_berkowitz() {
        for n in 1..=12 {
            let a = Graph::path(n).unwrap().adjacency_matrix();
            assert_eq!(charpoly_path(n).unwrap(), charpoly_berkowitz(&a).unwrap());
        }
        for n in 4..=12 {
            let a = Graph::dynkin_d(n).unwrap().adjacency_matrix();
            assert_eq!(
                charpoly_dynkin(n).unwrap(),
                charpoly_berkowitz(&a).unwrap(),
                "n={n}"
            );
        }
        assert!(charpoly_dynkin(3).is_err());
    }

    #[test]
    fn dynkin_even_low_coefficients() {
        // Even n: constant and linear coefficients vanish exactly and the
        // x^2 coefficient is odd.
        for n in (4..=64).step_by(2) {
            let phi = charpoly_dynkin(n).unwrap();
            assert!(phi.coeff(0).is_zero(), "n={n}");
            assert!(phi.coeff(1).is_zero(), "n={n}");
            assert!(phi.coeff(2).is_odd(), "n={n}");
        }
    }

    #[test]
    fn cayley_hamilton() {
        let mut rng = ChaCha8Rng::seed_from_u64(0xcafe);
        for _ in 0..15 {
            let n = rng.random_range(1..=10usize);
            let m = IntMatrix::from_fn(n, n, |_, _| BigInt::from(rng.random_range(-3..=3i64)));
            let p = charpoly_berkowitz(&m).unwrap();
            assert_eq!(p.eval_at_matrix(&m).unwrap(), IntMatrix::zeros(n, n));
        }
    }

    #[test]
    fn constant_term_is_signed_determinant() {
        let mut rng = ChaCha8Rng::seed_from_u64(0xdead);
        for _ in 0..20 {
            let n = rng.random_range(1..=7usize);
            let m = IntMatrix::from_fn(n, n, |_, _| BigInt::from(rng.random_range(-5..=5i64)));
            let p = charpoly_berkowitz(&m).unwrap();
            let det = m.det_bareiss().unwrap();
            let signed = if n % 2 == 0 { det } else { -det };
            assert_eq!(p.coeff(0), signed);
        }
    }

    #[test]
    fn odd_indexed_coefficients_are_even_for_graphs() {
        // On any graph, the charpoly coefficients c_i of x^{n-i} are even for
        // odd i.
        let mut rng = ChaCha8Rng::seed_from_u64(0x0dd);
        for trial in 0..100 {
            let n = rng.random_range(1..=12usize);
            let g = Graph::random(n, rng.random_range(0.0..=1.0), trial).unwrap();
            let p = charpoly_berkowitz(&g.adjacency_matrix()).unwrap();
            for i in (1..=n).step_by(2) {
                assert!(p.coeff(n - i).is_even(), "n={n} i={i}");
            }
        }
    }
}
