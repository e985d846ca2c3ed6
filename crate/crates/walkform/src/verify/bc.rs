//! The intertwining pair (B, C) and the identities AC = CB and
//! `truncated walk of D_n` = `walk matrix of B`.

use std::time::Instant;

use num_bigint::BigInt;

use super::{VerificationReport, VerifyError};
use crate::graph::Graph;
use crate::linalg::IntMatrix;
use crate::walk::{truncated_walk_dynkin, walk_matrix_of_matrix};

fn require_n(n: usize) -> Result<(), VerifyError> {
    if !n.is_multiple_of(4) {
        return Err(VerifyError::NotMultipleOfFour(n));
    }
    if n < 8 {
        return Err(VerifyError::TooSmall { min: 8, got: n });
    }
    Ok(())
}

/// The (1, 0, -1, 0) pattern that fills the last rows of B and C.
fn cyclic_pattern(j: usize) -> i64 {
    match j % 4 {
        0 => 1,
        2 => -1,
        _ => 0,
    }
}

/// The (n-2) x (n-2) companion of the Dynkin graph: an almost-tridiagonal
/// band with a cyclically patterned last row.
pub fn matrix_b(n: usize) -> Result<IntMatrix, VerifyError> {
    require_n(n)?;
    let m = n - 2;
    let mut b = IntMatrix::zeros(m, m);
    b[(0, 1)] = BigInt::from(1);
    b[(1, 0)] = BigInt::from(2);
    b[(1, 2)] = BigInt::from(1);
    for r in 2..m - 1 {
        b[(r, r - 1)] = BigInt::from(1);
        b[(r, r + 1)] = BigInt::from(1);
    }
    for j in 0..n - 4 {
        b[(m - 1, j)] = BigInt::from(cyclic_pattern(j));
    }
    b[(m - 1, m - 2)] = BigInt::from(2);
    Ok(b)
}

/// The n x (n-2) intertwiner: A(D_n) C = C B. Rows 2..n-1 are identity rows,
/// so C maps the all-one vector of size n-2 to the all-one vector of size n.
pub fn matrix_c(n: usize) -> Result<IntMatrix, VerifyError> {
    require_n(n)?;
    let m = n - 2;
    let mut c = IntMatrix::zeros(n, m);
    c[(0, 0)] = BigInt::from(1);
    c[(1, 0)] = BigInt::from(1);
    for r in 2..n - 1 {
        c[(r, r - 1)] = BigInt::from(1);
    }
    for j in 0..n - 4 {
        c[(n - 1, j)] = BigInt::from(cyclic_pattern(j));
    }
    c[(n - 1, m - 2)] = BigInt::from(1);
    Ok(c)
}

/// Checks the exact integer identity `A(D_n) C = C B`.
pub fn check_intertwine(n: usize) -> Result<VerificationReport, VerifyError> {
    let started = Instant::now();
    let a = Graph::dynkin_d(n)
        .map_err(|_| VerifyError::TooSmall { min: 8, got: n })?
        .adjacency_matrix();
    let b = matrix_b(n)?;
    let c = matrix_c(n)?;
    let ac = a.matmul(&c).expect("shapes agree by construction");
    let cb = c.matmul(&b).expect("shapes agree by construction");
    let pass = ac == cb;
    let witness = if pass {
        format!("AC=CB entrywise on {}x{}", n, n - 2)
    } else {
        first_difference(&ac, &cb)
    };
    Ok(VerificationReport::finish(
        "intertwine",
        format!("n={n}"),
        pass,
        witness,
        started,
    ))
}

/// Checks that the truncated walk matrix of `D_n` equals the walk matrix
/// of B, entrywise over the integers.
pub fn check_walk_equality(n: usize) -> Result<VerificationReport, VerifyError> {
    let started = Instant::now();
    require_n(n)?;
    let wt = truncated_walk_dynkin(n).expect("preconditions checked");
    let wb = walk_matrix_of_matrix(&matrix_b(n)?).expect("B is square");
    let pass = &wt == wb.matrix();
    let witness = if pass {
        format!("truncated walk equals W(B) on {0}x{0}", n - 2)
    } else {
        first_difference(&wt, wb.matrix())
    };
    Ok(VerificationReport::finish(
        "walk-eq",
        format!("n={n}"),
        pass,
        witness,
        started,
    ))
}

fn first_difference(a: &IntMatrix, b: &IntMatrix) -> String {
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            if a[(i, j)] != b[(i, j)] {
                return format!("first mismatch at ({i},{j}): {} vs {}", a[(i, j)], b[(i, j)]);
            }
        }
    }
    "matrices differ in shape".into()
}
