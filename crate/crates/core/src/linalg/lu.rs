use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::ComplexMatrix;
use crate::error::{Error, Result};
use crate::tolerance::ToleranceConfig;

/// Packed LU factors with partial pivoting: `P M = L U`.
#[derive(Debug, Clone)]
pub struct Lu {
    n: usize,
    lu: Vec<Complex64>,
    perm: Vec<usize>,
    odd_swaps: bool,
    scale: f64,
}

impl Lu {
    /// Factors `m`. Never fails; zero pivots are kept and reported by [`Lu::check_pivots`].
    pub fn factor(m: &ComplexMatrix) -> Self {
        let n = m.n();
        let mut lu = m.as_slice().to_vec();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut odd_swaps = false;
        for k in 0..n {
            let (p, best) = (k..n)
                .map(|i| (i, lu[i * n + k].norm()))
                .fold((k, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
            if p != k {
                for j in 0..n {
                    lu.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
                odd_swaps = !odd_swaps;
            }
            if best == 0.0 {
                continue;
            }
            let pivot = lu[k * n + k];
            for i in (k + 1)..n {
                let f = lu[i * n + k] / pivot;
                lu[i * n + k] = f;
                if f.is_zero() {
                    continue;
                }
                for j in (k + 1)..n {
                    let ukj = lu[k * n + j];
                    lu[i * n + j] -= f * ukj;
                }
            }
        }
        Self {
            n,
            lu,
            perm,
            odd_swaps,
            scale: m.frobenius_norm(),
        }
    }

    pub fn det(&self) -> Complex64 {
        let prod = (0..self.n).fold(Complex64::one(), |acc, k| acc * self.lu[k * self.n + k]);
        if self.odd_swaps {
            -prod
        } else {
            prod
        }
    }

    /// Fails with [`Error::Singular`] when a pivot falls below `tol_rank · ‖M‖`.
    pub fn check_pivots(&self, tol_rank: f64) -> Result<()> {
        let threshold = tol_rank * self.scale;
        for k in 0..self.n {
            let pivot = self.lu[k * self.n + k].norm();
            if pivot <= threshold {
                return Err(Error::Singular { step: k, pivot });
            }
        }
        Ok(())
    }

    /// Solves with the stored factors; the caller must have checked the pivots.
    pub fn solve_in_place(&self, b: &mut [Complex64]) {
        let n = self.n;
        assert_eq!(b.len(), n);
        let mut x: Vec<Complex64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let mut s = x[i];
            for j in 0..i {
                s -= self.lu[i * n + j] * x[j];
            }
            x[i] = s;
        }
        for i in (0..n).rev() {
            let mut s = x[i];
            for j in (i + 1)..n {
                s -= self.lu[i * n + j] * x[j];
            }
            x[i] = s / self.lu[i * n + i];
        }
        b.copy_from_slice(&x);
    }
}

/// Determinant by pivoted elimination. Near-zero interpretation is left to the caller.
pub fn det(m: &ComplexMatrix) -> Complex64 {
    Lu::factor(m).det()
}

/// Solves `M x = b`.
pub fn solve_vec(
    m: &ComplexMatrix,
    b: &[Complex64],
    cfg: &ToleranceConfig,
) -> Result<Vec<Complex64>> {
    if b.len() != m.n() {
        return Err(Error::DimensionMismatch {
            left: m.n(),
            right: b.len(),
        });
    }
    let lu = Lu::factor(m);
    lu.check_pivots(cfg.tol_rank)?;
    let mut x = b.to_vec();
    lu.solve_in_place(&mut x);
    Ok(x)
}

/// Solves `M X = R` column by column.
pub fn solve(
    m: &ComplexMatrix,
    rhs: &ComplexMatrix,
    cfg: &ToleranceConfig,
) -> Result<ComplexMatrix> {
    if rhs.n() != m.n() {
        return Err(Error::DimensionMismatch {
            left: m.n(),
            right: rhs.n(),
        });
    }
    let lu = Lu::factor(m);
    lu.check_pivots(cfg.tol_rank)?;
    let cols: Vec<Vec<Complex64>> = rhs
        .columns()
        .into_iter()
        .map(|mut c| {
            lu.solve_in_place(&mut c);
            c
        })
        .collect();
    Ok(ComplexMatrix::from_columns(&cols))
}

pub fn inverse(m: &ComplexMatrix, cfg: &ToleranceConfig) -> Result<ComplexMatrix> {
    solve(m, &ComplexMatrix::identity(m.n()), cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use alloc::vec;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn identity_solve_returns_rhs() {
        let cfg = ToleranceConfig::default();
        let b = vec![Complex64::new(1.0, 2.0), c(-3.0), Complex64::new(0.0, 0.5)];
        let x = solve_vec(&ComplexMatrix::identity(3), &b, &cfg).unwrap();
        assert_eq!(x, b);
    }

    #[test]
    fn diagonal_solve() {
        let cfg = ToleranceConfig::default();
        let m = ComplexMatrix::from_real_diagonal(&[2.0, 4.0]);
        let x = solve_vec(&m, &[c(1.0), c(1.0)], &cfg).unwrap();
        assert_eq!(x, vec![c(0.5), c(0.25)]);
    }

    #[test]
    fn singular_h0_is_reported() {
        let cfg = ToleranceConfig::default();
        let h0 = fixtures::example_2_9_h0();
        // H0 (1,0,0)ᵀ = (1,1,1)ᵀ, but H0 has a kernel so the solve must refuse.
        assert_eq!(h0.mul_vec(&[c(1.0), c(0.0), c(0.0)]), vec![c(1.0); 3]);
        assert!(matches!(
            solve_vec(&h0, &[c(1.0); 3], &cfg),
            Err(Error::Singular { .. })
        ));
    }

    #[test]
    fn determinants() {
        assert_eq!(det(&ComplexMatrix::identity(4)), c(1.0));
        // [[1, -t], [-t, -1]] at t = 0.
        let m = ComplexMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, -1.0]]);
        assert_eq!(det(&m), c(-1.0));
        let h0 = fixtures::example_2_9_h0();
        let v = fixtures::example_2_9_v();
        let ht = h0.sub_scaled(c(-5.0), &v);
        assert!(det(&ht).norm() < 1e-12);
        // Swap parity.
        let p = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
        assert_eq!(det(&p), c(-1.0));
    }

    #[test]
    fn matrix_solve_residual() {
        let cfg = ToleranceConfig::default();
        let m = ComplexMatrix::from_fn(4, |i, j| {
            Complex64::new(
                1.0 / (1.0 + i as f64 + j as f64),
                (i as f64 - j as f64) * 0.1,
            )
        })
        .shift(c(2.0));
        let rhs = ComplexMatrix::from_fn(4, |i, j| Complex64::new(i as f64, j as f64));
        let x = solve(&m, &rhs, &cfg).unwrap();
        let res = (&(&m * &x) - &rhs).frobenius_norm();
        assert!(res <= cfg.tol_eig * m.frobenius_norm() * x.frobenius_norm());
    }
}
