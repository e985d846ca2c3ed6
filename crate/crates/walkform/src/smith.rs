//! Smith normal form over the integers, with invariant and determinantal
//! factors and a brute-force minor-gcd oracle.

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::linalg::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SmithError {
    #[error("minor order {order} exceeds the {rows}x{cols} matrix")]
    OrderTooLarge {
        order: usize,
        rows: usize,
        cols: usize,
    },
    #[error("enumerating {count} minors exceeds the cap of {cap}")]
    EnumerationCap { count: u128, cap: u128 },
}

/// Invariant factors `d_1 | d_2 | ... | d_k` of an integer matrix, with the
/// unimodular transforms `P M Q = diag(d)` kept on request.
#[derive(Debug, Clone)]
pub struct SmithDecomposition {
    d: Vec<BigInt>,
    p: Option<IntMatrix>,
    q: Option<IntMatrix>,
}

impl SmithDecomposition {
    /// The invariant factors, nonnegative and in divisibility order
    /// (with the convention that 0 divides 0).
    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.d
    }

    /// Determinantal factors `Delta_0 = 1, Delta_i = d_1 ... d_i`, zero from
    /// the first vanishing invariant factor on.
    pub fn determinantal_factors(&self) -> Vec<BigInt> {
        let mut out = Vec::with_capacity(self.d.len() + 1);
        let mut acc = BigInt::one();
        out.push(acc.clone());
        for d in &self.d {
            acc *= d;
            out.push(acc.clone());
        }
        out
    }

    /// Number of nonzero invariant factors; the rank over the rationals.
    pub fn rank(&self) -> usize {
        self.d.iter().filter(|d| !d.is_zero()).count()
    }

    /// Rank over `F_p`: the number of invariant factors not divisible by p.
    pub fn rank_mod(&self, p: &BigInt) -> usize {
        self.d.iter().filter(|d| !(*d % p).is_zero()).count()
    }

    /// The transforms `(P, Q)` when they were requested.
    pub fn transforms(&self) -> Option<(&IntMatrix, &IntMatrix)> {
        self.p.as_ref().zip(self.q.as_ref())
    }
}

/// Smith normal form by classical elimination.
///
/// Pivots are chosen as the smallest nonzero absolute value of the remaining
/// block to curb entry growth. A pivot entry that divides its row and column
/// clears them by plain subtractions; anything else is absorbed into the
/// pivot by a unimodular extended-gcd pair transform, which replaces the
/// pivot by a proper divisor. Iterated Euclid-by-swaps is avoided on purpose:
/// it squares entry sizes on dense inputs. The divisibility chain is restored
/// by a Kannan-Bachem style fix-up pass over the diagonal at the end, and the
/// factors are normalized nonnegative. Rectangular input yields
/// `min(rows, cols)` factors.
pub fn smith_normal_form(m: &IntMatrix, keep_transforms: bool) -> SmithDecomposition {
    let rows = m.rows();
    let cols = m.cols();
    let k = rows.min(cols);
    let mut a = m.clone();
    let mut p = keep_transforms.then(|| IntMatrix::identity(rows));
    let mut q = keep_transforms.then(|| IntMatrix::identity(cols));

    'outer: for t in 0..k {
        loop {
            let Some((pi, pj)) = smallest_pivot(&a, t) else {
                break 'outer; // remaining block is zero
            };
            a.swap_rows(t, pi);
            if let Some(p) = p.as_mut() {
                p.swap_rows(t, pi);
            }
            a.swap_cols(t, pj);
            if let Some(q) = q.as_mut() {
                q.swap_cols(t, pj);
            }
            // Clear the pivot column.
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let pivot = a[(t, t)].clone();
                let target = a[(i, t)].clone();
                if (&target % &pivot).is_zero() {
                    row_sub_mul(&mut a, p.as_mut(), i, t, &(target / pivot));
                } else {
                    let eg = pivot.extended_gcd(&target);
                    row_pair_transform(
                        &mut a,
                        p.as_mut(),
                        t,
                        i,
                        &eg.x,
                        &eg.y,
                        &(-&target / &eg.gcd),
                        &(&pivot / &eg.gcd),
                    );
                }
            }
            // Clear the pivot row. Pair transforms here mix column t with a
            // later column and may refill the pivot column below row t, but
            // they also strictly shrink the pivot, so only a few passes can
            // happen.
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let pivot = a[(t, t)].clone();
                let target = a[(t, j)].clone();
                if (&target % &pivot).is_zero() {
                    col_sub_mul(&mut a, q.as_mut(), j, t, &(target / pivot));
                } else {
                    let eg = pivot.extended_gcd(&target);
                    col_pair_transform(
                        &mut a,
                        q.as_mut(),
                        t,
                        j,
                        &eg.x,
                        &eg.y,
                        &(-&target / &eg.gcd),
                        &(&pivot / &eg.gcd),
                    );
                }
            }
            let col_clear = (t + 1..rows).all(|i| a[(i, t)].is_zero());
            let row_clear = (t + 1..cols).all(|j| a[(t, j)].is_zero());
            if col_clear && row_clear {
                break;
            }
        }
    }

    // Nonnegative normalization.
    for t in 0..k {
        if a[(t, t)].is_negative() {
            negate_row(&mut a, p.as_mut(), t);
        }
    }

    // Restore the divisibility chain: replace offending diagonal pairs by
    // (gcd, lcm) with unimodular operations.
    for i in 0..k {
        for j in i + 1..k {
            let di = a[(i, i)].clone();
            let dj = a[(j, j)].clone();
            if di.is_zero() || (&dj % &di).is_zero() {
                continue;
            }
            // col_i += col_j brings d_j into the pivot column.
            col_add(&mut a, q.as_mut(), i, j);
            let eg = di.extended_gcd(&dj);
            let g = eg.gcd;
            // Unimodular row pair: [[x, y], [-d_j/g, d_i/g]] has determinant 1.
            row_pair_transform(
                &mut a,
                p.as_mut(),
                i,
                j,
                &eg.x,
                &eg.y,
                &(-&dj / &g),
                &(&di / &g),
            );
            // a[(i, j)] = y * d_j is a multiple of the new pivot g.
            let f = &a[(i, j)] / &g;
            col_sub_mul(&mut a, q.as_mut(), j, i, &f);
            if a[(i, i)].is_negative() {
                negate_row(&mut a, p.as_mut(), i);
            }
            if a[(j, j)].is_negative() {
                negate_row(&mut a, p.as_mut(), j);
            }
        }
    }

    let d = (0..k).map(|t| a[(t, t)].clone()).collect();
    SmithDecomposition { d, p, q }
}

fn smallest_pivot(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let v = &a[(i, j)];
            if v.is_zero() {
                continue;
            }
            let mag = v.abs();
            match &best {
                Some((_, _, m)) if *m <= mag => {}
                _ => best = Some((i, j, mag)),
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// row_i -= quo * row_t
fn row_sub_mul(a: &mut IntMatrix, p: Option<&mut IntMatrix>, i: usize, t: usize, quo: &BigInt) {
    for j in 0..a.cols() {
        let v = &a[(t, j)] * quo;
        a[(i, j)] -= v;
    }
    if let Some(p) = p {
        for j in 0..p.cols() {
            let v = &p[(t, j)] * quo;
            p[(i, j)] -= v;
        }
    }
}

/// col_j -= quo * col_t
fn col_sub_mul(a: &mut IntMatrix, q: Option<&mut IntMatrix>, j: usize, t: usize, quo: &BigInt) {
    for i in 0..a.rows() {
        let v = &a[(i, t)] * quo;
        a[(i, j)] -= v;
    }
    if let Some(q) = q {
        for i in 0..q.rows() {
            let v = &q[(i, t)] * quo;
            q[(i, j)] -= v;
        }
    }
}

/// col_i += col_j
fn col_add(a: &mut IntMatrix, q: Option<&mut IntMatrix>, i: usize, j: usize) {
    for r in 0..a.rows() {
        let v = a[(r, j)].clone();
        a[(r, i)] += v;
    }
    if let Some(q) = q {
        for r in 0..q.rows() {
            let v = q[(r, j)].clone();
            q[(r, i)] += v;
        }
    }
}

fn negate_row(a: &mut IntMatrix, p: Option<&mut IntMatrix>, i: usize) {
    for j in 0..a.cols() {
        let v = -a[(i, j)].clone();
        a[(i, j)] = v;
    }
    if let Some(p) = p {
        for j in 0..p.cols() {
            let v = -p[(i, j)].clone();
            p[(i, j)] = v;
        }
    }
}

/// cols (i, j) <- cols (i, j) * [[x, u], [y, v]], i.e. new col_i is
/// x*col_i + y*col_j and new col_j is u*col_i + v*col_j.
#[allow(clippy::too_many_arguments)]
fn col_pair_transform(
    a: &mut IntMatrix,
    q: Option<&mut IntMatrix>,
    i: usize,
    j: usize,
    x: &BigInt,
    y: &BigInt,
    u: &BigInt,
    v: &BigInt,
) {
    let apply = |m: &mut IntMatrix| {
        for r in 0..m.rows() {
            let ci = m[(r, i)].clone();
            let cj = m[(r, j)].clone();
            m[(r, i)] = x * &ci + y * &cj;
            m[(r, j)] = u * &ci + v * &cj;
        }
    };
    apply(a);
    if let Some(q) = q {
        apply(q);
    }
}

/// rows (i, j) <- [[x, y], [u, v]] * rows (i, j)
#[allow(clippy::too_many_arguments)]
fn row_pair_transform(
    a: &mut IntMatrix,
    p: Option<&mut IntMatrix>,
    i: usize,
    j: usize,
    x: &BigInt,
    y: &BigInt,
    u: &BigInt,
    v: &BigInt,
) {
    let apply = |m: &mut IntMatrix| {
        for c in 0..m.cols() {
            let ri = m[(i, c)].clone();
            let rj = m[(j, c)].clone();
            m[(i, c)] = x * &ri + y * &rj;
            m[(j, c)] = u * &ri + v * &rj;
        }
    };
    apply(a);
    if let Some(p) = p {
        apply(p);
    }
}

/// Greatest common divisor of all `order x order` minors by exhaustive
/// enumeration; zero when every minor vanishes.
///
/// This is the independent oracle for [`smith_normal_form`]: it never touches
/// the elimination path. The enumeration is capped to keep it honest about
/// its brute-force nature.
pub fn minor_gcd_oracle(m: &IntMatrix, order: usize) -> Result<BigInt, SmithError> {
    pub const MINOR_CAP: u128 = 1_000_000;
    let rows = m.rows();
    let cols = m.cols();
    if order > rows.min(cols) {
        return Err(SmithError::OrderTooLarge { order, rows, cols });
    }
    if order == 0 {
        return Ok(BigInt::one());
    }
    let count = binomial(rows, order).saturating_mul(binomial(cols, order));
    if count > MINOR_CAP {
        return Err(SmithError::EnumerationCap {
            count,
            cap: MINOR_CAP,
        });
    }
    let mut gcd = BigInt::zero();
    for row_idx in (0..rows).combinations(order) {
        for col_idx in (0..cols).combinations(order) {
            let minor = m
                .submatrix(&row_idx, &col_idx)
                .det_bareiss()
                .expect("selected minors are square");
            gcd = gcd.gcd(&minor);
            if gcd.is_one() {
                return Ok(gcd);
            }
        }
    }
    Ok(gcd)
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::walk::walk_matrix;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn factors(m: &IntMatrix) -> Vec<BigInt> {
        smith_normal_form(m, false).invariant_factors().to_vec()
    }

    fn assert_chain(d: &[BigInt]) {
        for w in d.windows(2) {
            if w[0].is_zero() {
                assert!(w[1].is_zero(), "chain broken at {w:?}");
            } else {
                assert!((&w[1] % &w[0]).is_zero(), "chain broken at {w:?}");
            }
        }
    }

    #[test]
    fn diagonal_pair() {
        let m = IntMatrix::from_i64_rows(&[vec![6, 0], vec![0, 4]]);
        assert_eq!(factors(&m), vec![big(2), big(12)]);
    }

    #[test]
    fn walk_matrix_of_d4() {
        let w = IntMatrix::from_i64_rows(&[
            vec![1, 1, 3, 3],
            vec![1, 1, 3, 3],
            vec![1, 3, 3, 9],
            vec![1, 1, 3, 3],
        ]);
        assert_eq!(factors(&w), vec![big(1), big(2), big(0), big(0)]);
    }

    #[test]
    fn walk_matrix_of_d5() {
        let w = walk_matrix(&Graph::dynkin_d(5).unwrap());
        assert_eq!(
            factors(w.matrix()),
            vec![big(1), big(1), big(1), big(2), big(0)]
        );
    }

    #[test]
    fn determinantal_factors_examples() {
        let m = IntMatrix::from_i64_rows(&[
            vec![1, 1, 3, 3],
            vec![1, 1, 3, 3],
            vec![1, 3, 3, 9],
            vec![1, 1, 3, 3],
        ]);
        let snf = smith_normal_form(&m, false);
        assert_eq!(
            snf.determinantal_factors(),
            vec![big(1), big(1), big(2), big(0), big(0)]
        );
        let id = smith_normal_form(&IntMatrix::identity(4), false);
        assert_eq!(id.determinantal_factors(), vec![big(1); 5]);
    }

    #[test]
    fn delta_of_d8_walk_matrix() {
        let w = walk_matrix(&Graph::dynkin_d(8).unwrap());
        let snf = smith_normal_form(w.matrix(), false);
        let delta = snf.determinantal_factors();
        assert_eq!(delta[6], big(8)); // Delta_{n-2} = 2^{n/2-1}
    }

    #[test]
    fn empty_and_zero_matrices() {
        assert!(factors(&IntMatrix::zeros(0, 0)).is_empty());
        assert_eq!(factors(&IntMatrix::zeros(2, 3)), vec![big(0), big(0)]);
    }

    #[test]
    fn rectangular_shapes() {
        let m = IntMatrix::from_i64_rows(&[vec![2, 4, 6], vec![2, 4, 8]]);
        let d = factors(&m);
        assert_eq!(d.len(), 2);
        assert_chain(&d);
        assert_eq!(d[0], minor_gcd_oracle(&m, 1).unwrap());
        let delta2 = minor_gcd_oracle(&m, 2).unwrap();
        assert_eq!(&d[0] * &d[1], delta2);
    }

    #[test]
    fn minor_gcd_examples() {
        let m = IntMatrix::from_i64_rows(&[vec![2, 4], vec![6, 8]]);
        assert_eq!(minor_gcd_oracle(&m, 1).unwrap(), big(2));
        // Two stacked rows of W(D_4): the six 2x2 minors are
        // {2, 0, 6, -6, 0, 18} with gcd 2.
        let rows = IntMatrix::from_i64_rows(&[vec![1, 1, 3, 3], vec![1, 3, 3, 9]]);
        assert_eq!(minor_gcd_oracle(&rows, 2).unwrap(), big(2));
        assert_eq!(minor_gcd_oracle(&IntMatrix::identity(6), 6).unwrap(), big(1));
        assert_eq!(minor_gcd_oracle(&IntMatrix::zeros(3, 3), 2).unwrap(), big(0));
    }

    #[test]
    fn minor_gcd_guards() {
        let m = IntMatrix::identity(4);
        assert!(matches!(
            minor_gcd_oracle(&m, 5),
            Err(SmithError::OrderTooLarge { .. })
        ));
        let wide = IntMatrix::zeros(40, 40);
        assert!(matches!(
            minor_gcd_oracle(&wide, 20),
            Err(SmithError::EnumerationCap { .. })
        ));
    }

    #[test]
    fn matches_minor_gcd_oracle_on_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5217);
        for trial in 0..90 {
            let n = 3 + trial % 3;
            let m = IntMatrix::from_fn(n, n, |_, _| big(rng.random_range(-9..=9)));
            let snf = smith_normal_form(&m, false);
            assert_chain(snf.invariant_factors());
            let delta = snf.determinantal_factors();
            for i in 1..=n {
                assert_eq!(
                    delta[i],
                    minor_gcd_oracle(&m, i).unwrap(),
                    "Delta_{i} mismatch for {m:?}"
                );
            }
        }
    }

    #[test]
    fn transforms_reconstruct_diagonal() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x7a9);
        for trial in 0..40 {
            let rows = 1 + trial % 5;
            let cols = 1 + (trial / 2) % 5;
            let m = IntMatrix::from_fn(rows, cols, |_, _| big(rng.random_range(-9..=9)));
            let snf = smith_normal_form(&m, true);
            let (p, q) = snf.transforms().unwrap();
            assert_eq!(p.det_bareiss().unwrap().abs(), big(1));
            assert_eq!(q.det_bareiss().unwrap().abs(), big(1));
            let product = p.matmul(&m).unwrap().matmul(q).unwrap();
            let mut expected = IntMatrix::zeros(rows, cols);
            for (t, d) in snf.invariant_factors().iter().enumerate() {
                expected[(t, t)] = d.clone();
            }
            assert_eq!(product, expected);
        }
    }

    #[test]
    fn invariant_under_permutations() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x9e3);
        for _ in 0..30 {
            let n = rng.random_range(2..=5usize);
            let m = IntMatrix::from_fn(n, n, |_, _| big(rng.random_range(-9..=9)));
            let mut rperm: Vec<usize> = (0..n).collect();
            let mut cperm: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                rperm.swap(i, rng.random_range(0..=i));
                cperm.swap(i, rng.random_range(0..=i));
            }
            let permuted = IntMatrix::from_fn(n, n, |i, j| m[(rperm[i], cperm[j])].clone());
            assert_eq!(factors(&m), factors(&permuted));
        }
    }

    #[test]
    fn at_most_half_odd_invariant_factors_for_walk_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x77);
        for trial in 0..60 {
            let n = rng.random_range(1..=12usize);
            let g = Graph::random(n, rng.random_range(0.0..=1.0), trial).unwrap();
            let w = walk_matrix(&g);
            let snf = smith_normal_form(w.matrix(), false);
            let odd = snf
                .invariant_factors()
                .iter()
                .filter(|d| d.is_odd())
                .count();
            assert!(odd <= n.div_ceil(2), "n={n} odd={odd}");
        }
    }

    #[test]
    fn rank_mod_matches_definition() {
        let m = IntMatrix::from_i64_rows(&[vec![2, 0, 0], vec![0, 6, 0], vec![0, 0, 0]]);
        let snf = smith_normal_form(&m, false);
        assert_eq!(snf.rank(), 2);
        assert_eq!(snf.rank_mod(&big(2)), 0);
        assert_eq!(snf.rank_mod(&big(3)), 1);
        assert_eq!(snf.rank_mod(&big(5)), 2);
    }
}
