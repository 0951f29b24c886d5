//! Hermitian eigensolver (cyclic complex Jacobi) and the functional calculus built on it.

use alloc::vec::Vec;

use num_complex::Complex64;
// Shadowed by inherent methods whenever std is in the build graph.
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::Zero;

use super::{ComplexMatrix, EigenDecomposition};
use crate::error::{Error, Result};
use crate::tolerance::ToleranceConfig;

const MAX_SWEEPS: usize = 64;

/// Eigen-decomposition of a Hermitian matrix with real ascending eigenvalues and a
/// unitary eigenvector matrix.
///
/// The input is gated by `tol_herm` and then replaced by its exact Hermitian part.
pub fn eigen_hermitian(m: &ComplexMatrix, cfg: &ToleranceConfig) -> Result<EigenDecomposition> {
    let mut a = m.hermitian_part_checked(cfg.tol_herm)?;
    let n = a.n();
    let mut v = ComplexMatrix::identity(n);
    let scale = a.frobenius_norm();

    let off_norm = |a: &ComplexMatrix| {
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    acc += a[(i, j)].norm_sqr();
                }
            }
        }
        acc.sqrt()
    };

    let mut converged = scale == 0.0 || n == 1;
    let mut sweeps = 0;
    while !converged {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence { iterations: sweeps });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        converged = off_norm(&a) <= f64::EPSILON * scale;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order
        .iter()
        .map(|&i| Complex64::new(a[(i, i)].re, 0.0))
        .collect();
    let vectors = ComplexMatrix::from_fn(n, |i, j| v[(i, order[j])]);
    Ok(EigenDecomposition {
        values,
        vectors,
        hermitian: true,
    })
}

/// One complex Jacobi rotation annihilating `a[p][q]`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let g = a[(p, q)];
    let abs_g = g.norm();
    if abs_g == 0.0 {
        return;
    }
    let n = a.n();
    let phase = g / abs_g;
    let theta = (a[(q, q)].re - a[(p, p)].re) / (2.0 * abs_g);
    let t = if theta == 0.0 {
        1.0
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let s_conj_phase = phase.conj() * s;
    let c_conj_phase = phase.conj() * c;

    // A <- A G, V <- V G
    for k in 0..n {
        let (ap, aq) = (a[(k, p)], a[(k, q)]);
        a[(k, p)] = ap * c - aq * s_conj_phase;
        a[(k, q)] = ap * s + aq * c_conj_phase;
        let (vp, vq) = (v[(k, p)], v[(k, q)]);
        v[(k, p)] = vp * c - vq * s_conj_phase;
        v[(k, q)] = vp * s + vq * c_conj_phase;
    }
    // A <- G* A
    let s_phase = phase * s;
    let c_phase = phase * c;
    for k in 0..n {
        let (rp, rq) = (a[(p, k)], a[(q, k)]);
        a[(p, k)] = rp * c - rq * s_phase;
        a[(q, k)] = rp * s + rq * c_phase;
    }
    a[(p, q)] = Complex64::zero();
    a[(q, p)] = Complex64::zero();
    a[(p, p)].im = 0.0;
    a[(q, q)].im = 0.0;
}

/// `U diag(f(λ)) U*` for a Hermitian eigen-decomposition.
pub fn spectral_map(eig: &EigenDecomposition, mut f: impl FnMut(f64) -> f64) -> ComplexMatrix {
    let u = &eig.vectors;
    let n = u.n();
    let weights: Vec<f64> = eig.values.iter().map(|z| f(z.re)).collect();
    let mut out = ComplexMatrix::zeros(n);
    for (k, &w) in weights.iter().enumerate() {
        if w == 0.0 {
            continue;
        }
        for i in 0..n {
            let uik = u[(i, k)] * w;
            for j in 0..n {
                out[(i, j)] += uik * u[(j, k)].conj();
            }
        }
    }
    out
}

/// Positive semidefinite square root. Eigenvalues in `[-tol_eig·‖M‖, 0)` are clamped to zero.
pub fn hermitian_sqrt(m: &ComplexMatrix, cfg: &ToleranceConfig) -> Result<ComplexMatrix> {
    let eig = eigen_hermitian(m, cfg)?;
    let min = eig.values.first().map_or(0.0, |z| z.re);
    if min < -cfg.tol_eig * m.frobenius_norm() {
        return Err(Error::NotPsd {
            min_eigenvalue: min,
        });
    }
    Ok(spectral_map(&eig, |x| x.max(0.0).sqrt()))
}

/// `M^{-1/2}` for a positive definite `M` (smallest eigenvalue above `tol_eig·‖M‖`).
pub fn hermitian_inverse_sqrt(m: &ComplexMatrix, cfg: &ToleranceConfig) -> Result<ComplexMatrix> {
    let eig = eigen_hermitian(m, cfg)?;
    let min = eig.values.first().map_or(0.0, |z| z.re);
    if min <= cfg.tol_eig * m.frobenius_norm() {
        return Err(Error::NotPositiveDefinite {
            min_eigenvalue: min,
        });
    }
    Ok(spectral_map(&eig, |x| 1.0 / x.sqrt()))
}

/// Splits a Hermitian matrix into `(V₊, V₋)` with `V = V₊ − V₋`, both PSD and `V₊V₋ = 0`.
///
/// Eigenvalues with magnitude at most `tol_rank·‖M‖` go to neither part.
pub fn split_positive_negative(
    m: &ComplexMatrix,
    cfg: &ToleranceConfig,
) -> Result<(ComplexMatrix, ComplexMatrix)> {
    let eig = eigen_hermitian(m, cfg)?;
    let thr = cfg.tol_rank * m.frobenius_norm();
    let plus = spectral_map(&eig, |x| if x > thr { x } else { 0.0 });
    let minus = spectral_map(&eig, |x| if x < -thr { -x } else { 0.0 });
    Ok((plus, minus))
}

/// Orthogonal projection onto the eigenvectors whose eigenvalue lies within
/// `tol_cluster·max(1, ‖M‖)` of `lambda0`.
pub fn eigenprojection(
    m: &ComplexMatrix,
    lambda0: f64,
    cfg: &ToleranceConfig,
) -> Result<ComplexMatrix> {
    let eig = eigen_hermitian(m, cfg)?;
    Ok(eigenprojection_from(
        &eig,
        lambda0,
        cfg.tol_cluster * m.frobenius_norm().max(1.0),
    ))
}

pub(crate) fn eigenprojection_from(
    eig: &EigenDecomposition,
    lambda0: f64,
    window: f64,
) -> ComplexMatrix {
    spectral_map(eig, |x| {
        if (x - lambda0).abs() <= window {
            1.0
        } else {
            0.0
        }
    })
}

/// Largest eigenvalue magnitude, i.e. the operator norm of a Hermitian matrix.
pub fn hermitian_norm(m: &ComplexMatrix, cfg: &ToleranceConfig) -> Result<f64> {
    let eig = eigen_hermitian(m, cfg)?;
    Ok(eig.values.iter().map(|z| z.re.abs()).fold(0.0, f64::max))
}

/// Operator 2-norm `‖M‖₂ = √λ_max(M*M)` of an arbitrary square matrix.
pub fn spectral_norm(m: &ComplexMatrix, cfg: &ToleranceConfig) -> Result<f64> {
    let gram = &m.adjoint() * m;
    Ok(hermitian_norm(&gram.hermitian_part_checked(f64::INFINITY)?, cfg)?.sqrt())
}
