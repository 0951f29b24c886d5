//! Dense complex linear algebra: factorizations, eigensolvers, rank and kernels, and the
//! Hermitian functional calculus used by the rest of the crate.
//!
//! Matrix norms written `‖M‖` below are Frobenius norms.

mod general;
mod hermitian;
mod lu;
mod matrix;
mod rank;

use alloc::vec::Vec;

use num_complex::Complex64;

pub use general::eigen_general;
pub(crate) use hermitian::eigenprojection_from;
pub use hermitian::{
    eigen_hermitian, eigenprojection, hermitian_inverse_sqrt, hermitian_norm, hermitian_sqrt,
    spectral_map, spectral_norm, split_positive_negative,
};
pub use lu::{det, inverse, solve, solve_vec, Lu};
pub use matrix::{axpy, dot, norm, normalized, scale_in_place, ComplexMatrix};
pub(crate) use rank::extend_orthonormal;
pub use rank::{nullspace_basis, rank};

/// Eigenvalues paired with right eigenvectors (column `k` of `vectors` belongs to `values[k]`).
#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomposition {
    pub values: Vec<Complex64>,
    pub vectors: ComplexMatrix,
    /// Set by the Hermitian solver: values are real and ascending, vectors unitary.
    pub hermitian: bool,
}

impl EigenDecomposition {
    pub fn real_values(&self) -> Vec<f64> {
        self.values.iter().map(|z| z.re).collect()
    }
}
