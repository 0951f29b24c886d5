use pencil_persist::linalg::{
    det, eigen_general, eigen_hermitian, eigenprojection, hermitian_sqrt, inverse, nullspace_basis,
    rank, spectral_norm, split_positive_negative, ComplexMatrix,
};
use pencil_persist::{random, Complex64, ToleranceConfig};
use proptest::prelude::*;

fn cfg() -> ToleranceConfig {
    ToleranceConfig::default()
}

fn close(a: &ComplexMatrix, b: &ComplexMatrix, tol: f64) -> bool {
    a.distance(b) <= tol * a.frobenius_norm().max(b.frobenius_norm()).max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hermitian_eigen_reconstructs(n in 1usize..=10, seed in any::<u64>()) {
        let m = random::hermitian(n, &mut random::seeded(seed));
        let eig = eigen_hermitian(&m, &cfg()).unwrap();
        let q = &eig.vectors;
        let d = ComplexMatrix::from_diagonal(&eig.values);
        prop_assert!(close(&(&(q * &d) * &q.adjoint()), &m, 1e-12));
        prop_assert!(close(&(&q.adjoint() * q), &ComplexMatrix::identity(n), 1e-12));
        prop_assert!(eig.values.windows(2).all(|w| w[0].re <= w[1].re));
        prop_assert!(eig.values.iter().all(|z| z.im == 0.0));
    }

    #[test]
    fn general_eigen_matches_determinant(n in 1usize..=10, seed in any::<u64>()) {
        let m = random::ginibre(n, &mut random::seeded(seed));
        let eig = eigen_general(&m, &cfg()).unwrap();
        let product = eig.values.iter().fold(Complex64::new(1.0, 0.0), |acc, z| acc * z);
        let d = det(&m);
        prop_assert!((product - d).norm() <= 1e-9 * d.norm().max(1.0), "{product} vs {d}");
        let trace: Complex64 = eig.values.iter().sum();
        prop_assert!((trace - m.trace()).norm() <= 1e-9 * m.frobenius_norm().max(1.0));
        for (j, lambda) in eig.values.iter().enumerate() {
            let v = eig.vectors.column(j);
            let mv = m.mul_vec(&v);
            let res: f64 = mv.iter().zip(&v).map(|(a, b)| (a - lambda * b).norm_sqr()).sum::<f64>().sqrt();
            prop_assert!(res <= 1e-9 * m.frobenius_norm().max(1.0));
        }
    }

    #[test]
    fn rank_plus_nullity(n in 1usize..=9, r in 0usize..=9, seed in any::<u64>()) {
        let r = r.min(n);
        let mut rng = random::seeded(seed);
        // Product of n×r and r×n Ginibre factors has rank r almost surely.
        let left = random::ginibre(n, &mut rng);
        let right = random::ginibre(n, &mut rng);
        let mask = ComplexMatrix::from_fn(n, |i, j| if i == j && i < r { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) });
        let m = &(&left * &mask) * &right;
        let null = nullspace_basis(&m, &cfg());
        prop_assert_eq!(rank(&m, &cfg()), r);
        prop_assert_eq!(rank(&m, &cfg()) + null.len(), n);
        for x in &null {
            let y = m.mul_vec(x);
            prop_assert!(y.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt() <= 1e-9 * m.frobenius_norm().max(1.0));
        }
    }

    #[test]
    fn psd_square_root_squares_back(n in 1usize..=9, k in 1usize..=9, seed in any::<u64>()) {
        let m = random::psd(n, k.min(n), &mut random::seeded(seed));
        let s = hermitian_sqrt(&m, &cfg()).unwrap();
        prop_assert!(s.hermitian_defect() <= 1e-12 * s.frobenius_norm().max(1.0));
        prop_assert!(close(&(&s * &s), &m, 1e-10));
    }

    #[test]
    fn split_recombines(n in 1usize..=9, seed in any::<u64>()) {
        let m = random::hermitian(n, &mut random::seeded(seed));
        let (p, q) = split_positive_negative(&m, &cfg()).unwrap();
        prop_assert!(close(&(&p - &q), &m, 1e-12));
        prop_assert!((&p * &q).frobenius_norm() <= 1e-10 * m.frobenius_norm().powi(2).max(1.0));
        for part in [&p, &q] {
            let low = eigen_hermitian(part, &cfg()).unwrap().values[0].re;
            prop_assert!(low >= -1e-12 * m.frobenius_norm().max(1.0));
        }
    }

    #[test]
    fn eigenprojection_is_orthogonal_projection(n in 2usize..=8, seed in any::<u64>()) {
        let mut rng = random::seeded(seed);
        // Integer-spaced repeated spectrum in a random frame.
        let diag: Vec<f64> = (0..n).map(|i| (i / 2) as f64).collect();
        let u = random::unitary(n, &mut rng);
        let m = &(&u * &ComplexMatrix::from_real_diagonal(&diag)) * &u.adjoint();
        let p = eigenprojection(&m, 0.0, &cfg()).unwrap();
        prop_assert!(close(&(&p * &p), &p, 1e-10));
        prop_assert!(p.hermitian_defect() <= 1e-12);
        prop_assert!((p.trace().re - 2.0f64.min(n as f64)).abs() < 1e-10);
        prop_assert!((&m * &p).frobenius_norm() <= 1e-10);
    }

    #[test]
    fn inverse_and_norms(n in 1usize..=8, seed in any::<u64>()) {
        let m = random::ginibre(n, &mut random::seeded(seed));
        let inv = inverse(&m, &cfg()).unwrap();
        prop_assert!(close(&(&m * &inv), &ComplexMatrix::identity(n), 1e-8));
        let s = spectral_norm(&m, &cfg()).unwrap();
        prop_assert!(s <= m.frobenius_norm() * (1.0 + 1e-12));
        prop_assert!(s * (n as f64).sqrt() >= m.frobenius_norm() * (1.0 - 1e-12));
    }
}
