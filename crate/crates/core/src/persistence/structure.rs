use alloc::vec::Vec;

use num_complex::Complex64;

use super::{CyclicityVerdict, PerturbationFamily, VClassification};
use crate::error::Result;
use crate::linalg::{eigen_hermitian, extend_orthonormal};
use crate::tolerance::ToleranceConfig;

/// Rank of the block Krylov matrix `[V | H0 V | … | H0ⁿ⁻¹ V]`.
///
/// The space is grown block by block from an orthonormal basis, applying `H0` only to the
/// directions added in the previous step. Growth stops at dimension `n` or as soon as a
/// block adds nothing, since the span is then `H0`-invariant.
pub fn cyclicity_check(fam: &PerturbationFamily, cfg: &ToleranceConfig) -> CyclicityVerdict {
    let n = fam.n();
    let v = fam.v();
    let h0 = fam.h0();
    let mut basis: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    let mut added = extend_orthonormal(
        &mut basis,
        v.columns(),
        cfg.tol_rank * v.frobenius_norm(),
        n,
    );
    let threshold = cfg.tol_rank * h0.frobenius_norm();
    while added > 0 && basis.len() < n {
        let start = basis.len() - added;
        let images: Vec<Vec<Complex64>> = basis[start..].iter().map(|q| h0.mul_vec(q)).collect();
        added = extend_orthonormal(&mut basis, images, threshold, n);
    }
    CyclicityVerdict {
        cyclic: basis.len() == n,
        krylov_rank: basis.len(),
        generator_count: n,
    }
}

/// Signs of the eigenvalues of `V`, with `|λ| ≤ tol_rank · ‖V‖` counted as kernel.
pub fn classify_v(fam: &PerturbationFamily, cfg: &ToleranceConfig) -> Result<VClassification> {
    let v = fam.v();
    let eig = eigen_hermitian(v, cfg)?;
    let thr = cfg.tol_rank * v.frobenius_norm();
    let rank_plus = eig.values.iter().filter(|z| z.re > thr).count();
    let rank_minus = eig.values.iter().filter(|z| z.re < -thr).count();
    Ok(VClassification {
        psd: rank_minus == 0,
        nsd: rank_plus == 0,
        indefinite: rank_plus > 0 && rank_minus > 0,
        rank_plus,
        rank_minus,
        kernel_dim: fam.n() - rank_plus - rank_minus,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::linalg::ComplexMatrix;

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn family(h0: ComplexMatrix, v: ComplexMatrix) -> PerturbationFamily {
        PerturbationFamily::new(h0, v, &cfg()).unwrap()
    }

    #[test]
    fn example_2_9_is_cyclic() {
        let fam = family(fixtures::example_2_9_h0(), fixtures::example_2_9_v());
        let verdict = cyclicity_check(&fam, &cfg());
        assert!(verdict.cyclic);
        assert_eq!(verdict.krylov_rank, 3);
        assert_eq!(verdict.generator_count, 3);
    }

    #[test]
    fn rank_one_projector_is_not_cyclic() {
        let (h0, v) = fixtures::intro_rank_one();
        let verdict = cyclicity_check(&family(h0, v), &cfg());
        assert!(!verdict.cyclic);
        assert_eq!(verdict.krylov_rank, 1);
    }

    #[test]
    fn invertible_v_is_cyclic() {
        let fam = family(
            ComplexMatrix::zeros(4),
            ComplexMatrix::from_real_diagonal(&[1.0, -2.0, 3.0, 0.5]),
        );
        assert!(cyclicity_check(&fam, &cfg()).cyclic);
    }

    #[test]
    fn zero_v_spans_nothing() {
        let fam = family(ComplexMatrix::identity(3), ComplexMatrix::zeros(3));
        assert_eq!(cyclicity_check(&fam, &cfg()).krylov_rank, 0);
    }

    #[test]
    fn krylov_growth_needs_several_blocks() {
        // Rank-one V = e₁e₁* with a tridiagonal H0 reaches every coordinate after n − 1 steps.
        let n = 5;
        let h0 = ComplexMatrix::from_fn(n, |i, j| {
            if i.abs_diff(j) == 1 {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        let mut diag = alloc::vec![0.0; n];
        diag[0] = 1.0;
        let fam = family(h0, ComplexMatrix::from_real_diagonal(&diag));
        let verdict = cyclicity_check(&fam, &cfg());
        assert!(verdict.cyclic);
    }

    #[test]
    fn v_classes() {
        let c = classify_v(
            &family(fixtures::example_2_9_h0(), fixtures::example_2_9_v()),
            &cfg(),
        )
        .unwrap();
        assert!(c.indefinite && !c.psd && !c.nsd);
        assert_eq!((c.rank_plus, c.rank_minus, c.kernel_dim), (1, 1, 1));

        let c = classify_v(
            &family(ComplexMatrix::zeros(3), ComplexMatrix::identity(3)),
            &cfg(),
        )
        .unwrap();
        assert!(c.psd && !c.nsd && !c.indefinite);
        assert_eq!(c.kernel_dim, 0);

        let c = classify_v(
            &family(ComplexMatrix::zeros(3), ComplexMatrix::zeros(3)),
            &cfg(),
        )
        .unwrap();
        assert!(c.psd && c.nsd && !c.indefinite);
        assert_eq!((c.rank_plus, c.rank_minus, c.kernel_dim), (0, 0, 3));
    }
}
