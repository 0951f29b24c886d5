//! Matrices of the classical examples, exactly as written down in the literature.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::linalg::ComplexMatrix;

/// Three-dimensional `H0` whose kernel persists for every coupling once `V` is indefinite.
pub fn example_2_9_h0() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[&[1.0, 1.0, 1.0], &[1.0, 1.0, 1.0], &[1.0, 1.0, 0.0]])
}

/// `V = diag(1, −1, 0)`.
pub fn example_2_9_v() -> ComplexMatrix {
    ComplexMatrix::from_real_diagonal(&[1.0, -1.0, 0.0])
}

/// `V₁ = I₃` of the `V = V₁ − V₂` decomposition.
pub fn example_2_9_v1() -> ComplexMatrix {
    ComplexMatrix::identity(3)
}

/// `V₂ = diag(0, 2, 1)`.
pub fn example_2_9_v2() -> ComplexMatrix {
    ComplexMatrix::from_real_diagonal(&[0.0, 2.0, 1.0])
}

/// The persistent kernel vector `f_t = (1, −1, −t)`.
pub fn example_2_9_kernel(t: Complex64) -> Vec<Complex64> {
    alloc::vec![Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0), -t]
}

/// `(A, B) = (diag(1, −1), [[0, 1], [1, 0]])`: both Hermitian, eigenvalues `±i`.
pub fn example_2_6_pencil() -> (ComplexMatrix, ComplexMatrix) {
    (
        ComplexMatrix::from_real_diagonal(&[1.0, -1.0]),
        ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]),
    )
}

/// `H0 = V = e₁e₁*` on ℂ²: zero is an eigenvalue of `H0 + tV` for every `t`.
pub fn intro_rank_one() -> (ComplexMatrix, ComplexMatrix) {
    let p = ComplexMatrix::from_real_diagonal(&[1.0, 0.0]);
    (p.clone(), p)
}

/// The `N × N` truncation of the unilateral shift: ones on the first subdiagonal.
pub fn truncated_shift(n: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, |i, j| {
        if i == j + 1 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// Finite section of the shift-pair example on ℂᴺ ⊕ ℂᴺ:
/// `H0 = [[0, S], [S*, 0]]` and `V = [[0, I], [I, 0]]`.
///
/// In infinite dimensions every point of the open unit disk is an eigenvalue of the pencil
/// `H0 f = t V f`. The truncation `V H0 = diag(S*, S)` is nilpotent, so only `t = 0` survives
/// at finite size; the disk cannot be reproduced by any finite section.
pub fn example_2_7_truncated(n: usize) -> (ComplexMatrix, ComplexMatrix) {
    let s = truncated_shift(n);
    let h0 = ComplexMatrix::from_fn(2 * n, |i, j| match (i < n, j < n) {
        (true, false) => s[(i, j - n)],
        (false, true) => s[(j, i - n)].conj(),
        _ => Complex64::new(0.0, 0.0),
    });
    let v = ComplexMatrix::from_fn(2 * n, |i, j| {
        if (i < n) != (j < n) && i % n == j % n {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    (h0, v)
}

/// Invertible indefinite `V` (a coordinate swap plus a sign) against `H0 = diag(1, 2, 3)` at
/// `λ0 = 2`: `det(λ0 − H0 − tV) = t²(1 + t)`.
pub fn invertible_v_family() -> (ComplexMatrix, ComplexMatrix, f64) {
    let h0 = ComplexMatrix::from_real_diagonal(&[1.0, 2.0, 3.0]);
    let v = ComplexMatrix::from_real_rows(&[&[0.0, 1.0, 0.0], &[1.0, 0.0, 0.0], &[0.0, 0.0, 1.0]]);
    (h0, v, 2.0)
}
