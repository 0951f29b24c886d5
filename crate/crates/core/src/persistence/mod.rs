//! Persistence analysis for `H_t = H0 + tV` at a target eigenvalue `λ0`.
//!
//! [`analyze`] assembles the exceptional set through the pencil route and checks it against
//! every structural prediction that applies to the family:
//!
//! - `ker V = {0}` forces a regular pencil of full degree, so exactly `n` couplings.
//! - `V ≥ 0` with `ran V` cyclic for `H0` rules out a singular pencil.
//! - for `λ0 ∉ σ(H0)` the Birman–Schwinger operator must reproduce the determinant.
//! - a singular pencil must carry a kernel vector at every sampled coupling.
//!
//! A failed applicable check is an [`Error::InternalInconsistency`](crate::Error).

mod analyze;
mod construct;
mod structure;

use alloc::string::String;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::pencil::ExceptionalSet;
use crate::tolerance::ToleranceConfig;

pub use analyze::{
    analyze, analyze_with, measure_estimate, projection_vanishing_check, AnalyzeOptions,
};
pub use construct::{construct_persistent_family, CANONICAL_SEED};
pub use structure::{classify_v, cyclicity_check};

/// A validated pair of Hermitian matrices of equal size.
#[derive(Debug, Clone, PartialEq)]
pub struct PerturbationFamily {
    h0: ComplexMatrix,
    v: ComplexMatrix,
}

impl PerturbationFamily {
    /// Checks both matrices against `tol_herm` and stores their exact Hermitian parts.
    pub fn new(h0: ComplexMatrix, v: ComplexMatrix, cfg: &ToleranceConfig) -> Result<Self> {
        if h0.n() != v.n() {
            return Err(Error::DimensionMismatch {
                left: h0.n(),
                right: v.n(),
            });
        }
        Ok(Self {
            h0: h0.hermitian_part_checked(cfg.tol_herm)?,
            v: v.hermitian_part_checked(cfg.tol_herm)?,
        })
    }

    pub fn h0(&self) -> &ComplexMatrix {
        &self.h0
    }

    pub fn v(&self) -> &ComplexMatrix {
        &self.v
    }

    pub fn n(&self) -> usize {
        self.h0.n()
    }

    /// `H0 + tV`.
    pub fn at(&self, t: Complex64) -> ComplexMatrix {
        self.h0.sub_scaled(-t, &self.v)
    }
}

/// Sign structure of `V`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VClassification {
    pub psd: bool,
    pub nsd: bool,
    pub indefinite: bool,
    /// Rank of `V₊`.
    pub rank_plus: usize,
    /// Rank of `V₋`.
    pub rank_minus: usize,
    pub kernel_dim: usize,
}

/// Whether `span{H0ᵏ V e_j}` is all of ℂⁿ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CyclicityVerdict {
    pub cyclic: bool,
    pub krylov_rank: usize,
    /// Number of basis vectors `e_j` whose images `V e_j` seed the Krylov space.
    pub generator_count: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TheoremCheck {
    pub name: &'static str,
    /// Whether the hypotheses of the prediction hold for this family.
    pub applicable: bool,
    pub predicted: String,
    pub observed: String,
    /// Always true for inapplicable checks.
    pub consistent: bool,
}

/// A kernel vector of `H0 + tV − λ0` found at a sampled coupling.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelWitness {
    pub t: Complex64,
    pub vector: Vec<Complex64>,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PersistenceReport {
    pub family: PerturbationFamily,
    pub lambda0: f64,
    pub lambda0_in_spectrum: bool,
    pub exceptional: ExceptionalSet,
    pub cyclicity: CyclicityVerdict,
    pub v_class: VClassification,
    pub generic_kernel_dimension: usize,
    pub theorem_checks: Vec<TheoremCheck>,
    pub witnesses: Vec<KernelWitness>,
    pub measure_estimate: f64,
    pub notes: Vec<&'static str>,
}

/// Affine kernel family `f_t = u0 + t u1` with `H0 u0 = 0`, `H0 u1 + V u0 = 0`, `V u1 = 0`,
/// so that `(H0 + tV) f_t = 0` for every `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct PersistentFamilyWitness {
    pub u0: Vec<Complex64>,
    pub u1: Vec<Complex64>,
    /// `[‖H0 u0‖, ‖H0 u1 + V u0‖, ‖V u1‖]`.
    pub residuals: [f64; 3],
}

impl PersistentFamilyWitness {
    pub fn new(fam: &PerturbationFamily, u0: Vec<Complex64>, u1: Vec<Complex64>) -> Self {
        use crate::linalg::norm;
        let h0u0 = fam.h0().mul_vec(&u0);
        let h0u1 = fam.h0().mul_vec(&u1);
        let vu0 = fam.v().mul_vec(&u0);
        let vu1 = fam.v().mul_vec(&u1);
        let mixed: Vec<Complex64> = h0u1.iter().zip(&vu0).map(|(a, b)| a + b).collect();
        let residuals = [norm(&h0u0), norm(&mixed), norm(&vu1)];
        Self { u0, u1, residuals }
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }

    /// `u0 + t u1`.
    pub fn vector_at(&self, t: Complex64) -> Vec<Complex64> {
        self.u0
            .iter()
            .zip(&self.u1)
            .map(|(a, b)| a + t * b)
            .collect()
    }
}
