//! Birman–Schwinger reduction for a real energy `E0` in the resolvent set of `H0`.
//!
//! `E0 ∈ σ_p(H0 + tV)` with `t ≠ 0` holds exactly when `−1/t` is an eigenvalue of
//! `K = V (H0 − E0 I)⁻¹`. Zero eigenvalues of `K` correspond to `|t| = ∞` and are dropped.
//! In finite dimensions every operator is compact, so the compactness hypothesis on `V` is
//! vacuous here. The reduction requires `E0 ∉ σ(H0)`, which is exactly the situation
//! where the persistence question for an eigenvalue of `H0` does not arise; it is kept as an
//! independent cross-check of the pencil route.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{eigen_general, eigen_hermitian, solve, ComplexMatrix};
use crate::pencil::is_real_unit;
use crate::tolerance::ToleranceConfig;

#[derive(Debug, Clone, PartialEq)]
pub struct BsReduction {
    pub e0: f64,
    /// `V (H0 − E0 I)⁻¹`.
    pub k: ComplexMatrix,
    /// All `n` eigenvalues of `K`.
    pub mu: Vec<Complex64>,
    /// `−1/μ` over the eigenvalues with `|μ| > tol_rank · ‖K‖`.
    pub exceptional_t: Vec<Complex64>,
}

/// Builds the Birman–Schwinger operator and the couplings it predicts.
///
/// Fails with [`Error::E0InSpectrum`] when `E0` is within `tol_cluster · max(1, ‖H0‖)` of an
/// eigenvalue of `H0`.
pub fn bs_reduce(
    h0: &ComplexMatrix,
    v: &ComplexMatrix,
    e0: f64,
    cfg: &ToleranceConfig,
) -> Result<BsReduction> {
    if h0.n() != v.n() {
        return Err(Error::DimensionMismatch {
            left: h0.n(),
            right: v.n(),
        });
    }
    let h0 = h0.hermitian_part_checked(cfg.tol_herm)?;
    let v = v.hermitian_part_checked(cfg.tol_herm)?;
    let spectrum = eigen_hermitian(&h0, cfg)?;
    let distance = spectrum
        .values
        .iter()
        .map(|z| (z.re - e0).abs())
        .fold(f64::INFINITY, f64::min);
    if distance <= cfg.tol_cluster * h0.frobenius_norm().max(1.0) {
        return Err(Error::E0InSpectrum { e0, distance });
    }

    // K = V R with R = (H0 − E0)⁻¹ Hermitian, so K = (R V)*.
    let shifted = h0.shift(Complex64::new(-e0, 0.0));
    let k = solve(&shifted, &v, cfg)?.adjoint();
    let mu = eigen_general(&k, cfg)?.values;
    let cutoff = cfg.tol_rank * k.frobenius_norm();
    let exceptional_t = mu
        .iter()
        .filter(|m| m.norm() > cutoff)
        .map(|m| -m.inv())
        .collect();
    Ok(BsReduction {
        e0,
        k,
        mu,
        exceptional_t,
    })
}

/// Number of predicted couplings that are real (within `tol_real`) and lie in `[0, 1]`.
pub fn count_in_unit_interval(r: &BsReduction, cfg: &ToleranceConfig) -> usize {
    r.exceptional_t
        .iter()
        .filter(|t| is_real_unit(**t, cfg.tol_real))
        .count()
}
