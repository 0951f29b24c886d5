use alloc::vec::Vec;

use num_complex::Complex64;

use super::matrix::{axpy, dot, norm};
use super::ComplexMatrix;
use crate::tolerance::ToleranceConfig;

fn project_out(basis: &[Vec<Complex64>], v: &mut [Complex64]) {
    // Two passes of classical Gram-Schmidt keep the residual orthogonal to working precision.
    for _ in 0..2 {
        for q in basis {
            let h = dot(q, v);
            axpy(-h, q, v);
        }
    }
}

/// Extends the orthonormal `basis` with directions from `candidates` using column-pivoted
/// Gram–Schmidt. A candidate direction is accepted while its residual norm exceeds
/// `threshold`. Returns the number of vectors appended.
pub(crate) fn extend_orthonormal(
    basis: &mut Vec<Vec<Complex64>>,
    mut candidates: Vec<Vec<Complex64>>,
    threshold: f64,
    max_dim: usize,
) -> usize {
    for c in candidates.iter_mut() {
        project_out(basis, c);
    }
    let start = basis.len();
    while basis.len() < max_dim && !candidates.is_empty() {
        let (idx, best) = candidates
            .iter()
            .enumerate()
            .map(|(i, c)| (i, norm(c)))
            .fold((0, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if best <= threshold {
            break;
        }
        let mut q = candidates.swap_remove(idx);
        project_out(basis, &mut q);
        let nq = norm(&q);
        if nq == 0.0 {
            continue;
        }
        q.iter_mut().for_each(|z| *z /= nq);
        for c in candidates.iter_mut() {
            let h = dot(&q, c);
            axpy(-h, &q, c);
        }
        basis.push(q);
    }
    basis.len() - start
}

/// Orthonormal basis of the row space of `M*` conjugated, i.e. of `ker(M)^⊥`.
fn co_kernel_basis(m: &ComplexMatrix, cfg: &ToleranceConfig) -> Vec<Vec<Complex64>> {
    let n = m.n();
    let rows: Vec<Vec<Complex64>> = (0..n)
        .map(|i| m.row(i).iter().map(|z| z.conj()).collect())
        .collect();
    let mut basis = Vec::new();
    extend_orthonormal(&mut basis, rows, cfg.tol_rank * m.frobenius_norm(), n);
    basis
}

/// Numerical rank: the number of pivoted orthogonalization steps whose pivot norm exceeds
/// `tol_rank · ‖M‖_F`. The orthogonalization runs over the rows of `M`, so the result is
/// always consistent with [`nullspace_basis`].
pub fn rank(m: &ComplexMatrix, cfg: &ToleranceConfig) -> usize {
    co_kernel_basis(m, cfg).len()
}

/// Orthonormal basis of the numerical kernel of `M`; its size is `n − rank(M)`.
pub fn nullspace_basis(m: &ComplexMatrix, cfg: &ToleranceConfig) -> Vec<Vec<Complex64>> {
    let n = m.n();
    let mut basis = co_kernel_basis(m, cfg);
    let r = basis.len();
    if r == n {
        return Vec::new();
    }
    let unit = (0..n)
        .map(|j| {
            let mut e = alloc::vec![Complex64::new(0.0, 0.0); n];
            e[j] = Complex64::new(1.0, 0.0);
            e
        })
        .collect();
    // The complement has dimension n - r, so the largest residual stays bounded away from zero.
    extend_orthonormal(&mut basis, unit, 1e-3, n);
    debug_assert_eq!(basis.len(), n);
    basis.split_off(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use alloc::vec;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn proportional(u: &[Complex64], v: &[Complex64]) -> f64 {
        // 1 - |<u,v>| / (|u||v|)
        1.0 - dot(u, v).norm() / (norm(u) * norm(v))
    }

    #[test]
    fn zero_and_identity() {
        let cfg = ToleranceConfig::default();
        assert_eq!(rank(&ComplexMatrix::zeros(3), &cfg), 0);
        assert_eq!(nullspace_basis(&ComplexMatrix::zeros(3), &cfg).len(), 3);
        assert_eq!(rank(&ComplexMatrix::identity(3), &cfg), 3);
        assert!(nullspace_basis(&ComplexMatrix::identity(3), &cfg).is_empty());
    }

    #[test]
    fn rank_one_outer_product() {
        let cfg = ToleranceConfig::default();
        let u = vec![Complex64::new(1.0, 2.0), c(-1.0), c(0.5)];
        let v = vec![c(3.0), Complex64::new(0.0, 1.0), c(2.0)];
        assert_eq!(rank(&ComplexMatrix::outer(&u, &v), &cfg), 1);
    }

    #[test]
    fn example_2_9_kernels() {
        let cfg = ToleranceConfig::default();
        let v = fixtures::example_2_9_v();
        assert_eq!(rank(&v, &cfg), 2);
        let kv = nullspace_basis(&v, &cfg);
        assert_eq!(kv.len(), 1);
        assert!(proportional(&kv[0], &[c(0.0), c(0.0), c(1.0)]) < 1e-14);

        let h0 = fixtures::example_2_9_h0();
        let kh = nullspace_basis(&h0, &cfg);
        assert_eq!(kh.len(), 1);
        assert!(proportional(&kh[0], &[c(1.0), c(-1.0), c(0.0)]) < 1e-14);
        assert!(norm(&h0.mul_vec(&kh[0])) < 1e-14);
    }
}
