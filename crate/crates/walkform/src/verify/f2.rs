//! GF(2) structure of the Dynkin walk matrix: the double root at zero, the
//! kernel of the adjacency matrix, the image/kernel disjointness, and the
//! rank bound with its square-root-polynomial mechanism.

use std::time::Instant;

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{VerificationReport, VerifyError};
use crate::graph::Graph;
use crate::linalg::{charpoly_berkowitz, charpoly_dynkin, intersect, BitMatrix, BitVec};
use crate::walk::{rank2_walk, walk_matrix};

/// The kernel vector `(1, 1, 0, ..., 0)`: the difference of the two pendant
/// vertices.
pub fn kernel_alpha(n: usize) -> BitVec {
    let mut v = BitVec::zeros(n);
    v.set(0, true);
    v.set(1, true);
    v
}

/// The alternating kernel vector with ones in even positions (1-indexed),
/// i.e. odd 0-based indices.
pub fn kernel_beta(n: usize) -> BitVec {
    let mut v = BitVec::zeros(n);
    for i in (1..n).step_by(2) {
        v.set(i, true);
    }
    v
}

/// Checks that x = 0 is a double root of the Dynkin characteristic
/// polynomial over GF(2): constant and linear coefficients even, quadratic
/// coefficient odd.
pub fn check_droot(n: usize) -> Result<VerificationReport, VerifyError> {
    if !n.is_multiple_of(2) {
        return Err(VerifyError::NotEven(n));
    }
    if n < 4 {
        return Err(VerifyError::TooSmall { min: 4, got: n });
    }
    let started = Instant::now();
    let phi = charpoly_dynkin(n).expect("n >= 4");
    let c0 = phi.coeff(0);
    let c1 = phi.coeff(1);
    let c2 = phi.coeff(2);
    let pass = c0.is_even() && c1.is_even() && c2.is_odd();
    Ok(VerificationReport::finish(
        "droot",
        format!("n={n}"),
        pass,
        format!(
            "c0={} c1={} x2_coeff={} (mod 2: {} {} {})",
            c0,
            c1,
            c2,
            u8::from(c0.is_odd()),
            u8::from(c1.is_odd()),
            u8::from(c2.is_odd())
        ),
        started,
    ))
}

/// Checks that the image of the walk matrix and the kernel of the adjacency
/// matrix are disjoint over GF(2), and that the kernel is exactly the
/// two-dimensional span of alpha and beta.
pub fn check_disjoint(n: usize) -> Result<VerificationReport, VerifyError> {
    if !n.is_multiple_of(4) {
        return Err(VerifyError::NotMultipleOfFour(n));
    }
    if n < 4 {
        return Err(VerifyError::TooSmall { min: 4, got: n });
    }
    let started = Instant::now();
    let g = Graph::dynkin_d(n).expect("n >= 4");
    let a = g.adjacency_f2();
    let w = walk_matrix(&g).matrix().to_bit_matrix();

    let kernel = a.kernel();
    let alpha = kernel_alpha(n);
    let beta = kernel_beta(n);
    let alpha_in = a.mul_vec(&alpha).expect("length n").is_zero();
    let beta_in = a.mul_vec(&beta).expect("length n").is_zero();
    let image = w.column_space();
    let inter = intersect(&image, &kernel).expect("same ambient space");

    let pass = kernel.len() == 2 && alpha_in && beta_in && inter.is_empty();
    Ok(VerificationReport::finish(
        "disjoint",
        format!("n={n}"),
        pass,
        format!(
            "ker_dim={} alpha_in_ker={alpha_in} beta_in_ker={beta_in} im_dim={} intersect_dim={}",
            kernel.len(),
            image.len(),
            inter.len()
        ),
        started,
    ))
}

/// Square root over GF(2): halves every exponent. `None` when an odd-exponent
/// coefficient is set, i.e. the polynomial is not a square.
fn sqrt_mod2(coeffs: &[bool]) -> Option<Vec<bool>> {
    if coeffs.iter().skip(1).step_by(2).any(|&c| c) {
        return None;
    }
    Some(coeffs.iter().copied().step_by(2).collect())
}

/// Horner evaluation of `p(A) e` over GF(2).
fn apply_poly_f2(a: &BitMatrix, coeffs: &[bool], e: &BitVec) -> BitVec {
    let mut acc = BitVec::zeros(e.len());
    for &c in coeffs.iter().rev() {
        acc = a.mul_vec(&acc).expect("square");
        if c {
            acc.xor_assign(e);
        }
    }
    acc
}

/// Checks the GF(2) rank bound `rank_2 W(D_n) <= n/2 - 1`, together with its
/// mechanism: over GF(2) the characteristic polynomial is `(x phi_1(x))^2`,
/// and `phi_1(A) e` must vanish.
pub fn check_rank2_bound(n: usize) -> Result<VerificationReport, VerifyError> {
    if !n.is_multiple_of(4) {
        return Err(VerifyError::NotMultipleOfFour(n));
    }
    if n < 4 {
        return Err(VerifyError::TooSmall { min: 4, got: n });
    }
    let started = Instant::now();
    let g = Graph::dynkin_d(n).expect("n >= 4");
    let bound = n / 2 - 1;
    let rank2 = rank2_walk(&g);

    let phi = charpoly_dynkin(n).expect("n >= 4");
    let mut coeffs = phi.coeffs_mod2();
    coeffs.resize(n + 1, false);
    let mechanism = match sqrt_mod2(&coeffs) {
        // The square root is x*phi_1; strip the factor x and apply to e.
        Some(half) if !half[0] => {
            let phi1 = &half[1..];
            let a = g.adjacency_f2();
            let e = BitVec::ones(n);
            apply_poly_f2(&a, phi1, &e).is_zero()
        }
        _ => false,
    };

    let pass = rank2 <= bound && mechanism;
    Ok(VerificationReport::finish(
        "rank2",
        format!("n={n}"),
        pass,
        format!("rank2={rank2} bound={bound} phi1_annihilates_e={mechanism}"),
        started,
    ))
}

/// Randomized check that odd-indexed characteristic polynomial coefficients
/// of graphs are even: with `phi = x^n + c_1 x^{n-1} + ... + c_n`, every
/// `c_i` with odd i is even.
pub fn check_odd_coeffs_even(trials: usize, seed: u64) -> VerificationReport {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for trial in 0..trials {
        let n = rng.random_range(1..=12usize);
        let p = rng.random_range(0.0..=1.0);
        let g = Graph::random(n, p, rng.random::<u64>()).expect("valid parameters");
        let phi = charpoly_berkowitz(&g.adjacency_matrix()).expect("square");
        for i in (1..=n).step_by(2) {
            if phi.coeff(n - i).is_odd() {
                failures.push(format!("trial {trial}: n={n} c_{i} odd"));
            }
        }
    }
    VerificationReport::finish(
        "lemma-odd0",
        format!("trials={trials} seed={seed}"),
        failures.is_empty(),
        if failures.is_empty() {
            format!("{trials} random graphs (n<=12), all odd-indexed coefficients even")
        } else {
            failures.join("; ")
        },
        started,
    )
}

/// Exhaustive check over all symmetric GF(2) matrices up to `max_size`:
/// whenever `M^2 = 0` over GF(2), also `M e = 0`.
pub fn check_symmetric_m2e_exhaustive(
    max_size: usize,
) -> Result<VerificationReport, VerifyError> {
    if !(1..=6).contains(&max_size) {
        // 2^{s(s+1)/2} matrices at size s; beyond 6 the sweep stops being
        // a desk-scale operation.
        return Err(VerifyError::OutOfRange {
            min: 1,
            max: 6,
            got: max_size,
        });
    }
    let started = Instant::now();
    let mut checked = 0u64;
    let mut square_zero = 0u64;
    let mut counterexamples = Vec::new();
    for s in 1..=max_size {
        let bits = s * (s + 1) / 2;
        for mask in 0u64..1 << bits {
            let mut m = BitMatrix::zeros(s, s);
            let mut bit = 0;
            for i in 0..s {
                for j in i..s {
                    if mask >> bit & 1 == 1 {
                        m.set(i, j, true);
                        m.set(j, i, true);
                    }
                    bit += 1;
                }
            }
            checked += 1;
            let square = m.matmul(&m).expect("square");
            if (0..s).all(|i| square.row(i).is_zero()) {
                square_zero += 1;
                let me = m.mul_vec(&BitVec::ones(s)).expect("length s");
                if !me.is_zero() {
                    counterexamples.push(format!("size {s} mask {mask:#x}"));
                }
            }
        }
    }
    Ok(VerificationReport::finish(
        "lemma-m2e",
        format!("sizes<={max_size}"),
        counterexamples.is_empty(),
        if counterexamples.is_empty() {
            format!("{checked} symmetric matrices checked, {square_zero} with square zero, no counterexamples")
        } else {
            counterexamples.join("; ")
        },
        started,
    ))
}
