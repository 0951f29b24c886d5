//! Seeded generators for test instances and counterexample searches.
//!
//! Every generator is driven by a ChaCha stream, so results depend only on the seed.

use alloc::vec::Vec;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::{extend_orthonormal, ComplexMatrix};

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent stream `stream` of the generator for `seed`.
pub fn seeded_stream(seed: u64, stream: u64) -> SeededRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * core::f64::consts::FRAC_1_SQRT_2
}

pub fn complex_vector<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<Complex64> {
    (0..n).map(|_| complex_normal(rng)).collect()
}

pub fn ginibre<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, |_, _| complex_normal(rng))
}

/// `(G + G*)/2` for a complex Gaussian `G`.
pub fn hermitian<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    let g = ginibre(n, rng);
    ComplexMatrix::from_fn(n, |i, j| {
        let z = (g[(i, j)] + g[(j, i)].conj()) * 0.5;
        if i == j {
            Complex64::new(z.re, 0.0)
        } else {
            z
        }
    })
}

/// Positive semidefinite `G G*` with `G` of size `n × rank`.
pub fn psd<R: Rng + ?Sized>(n: usize, rank: usize, rng: &mut R) -> ComplexMatrix {
    let cols: Vec<Vec<Complex64>> = (0..rank).map(|_| complex_vector(n, rng)).collect();
    let mut out = ComplexMatrix::zeros(n);
    for c in &cols {
        out = &out + &ComplexMatrix::outer(c, c);
    }
    // Exact Hermitian symmetry.
    ComplexMatrix::from_fn(n, |i, j| {
        if i == j {
            Complex64::new(out[(i, i)].re, 0.0)
        } else if i < j {
            out[(i, j)]
        } else {
            out[(j, i)].conj()
        }
    })
}

/// Haar-like random unitary from orthonormalized Gaussian columns.
pub fn unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    loop {
        let mut basis = Vec::with_capacity(n);
        let cand: Vec<Vec<Complex64>> = (0..n).map(|_| complex_vector(n, rng)).collect();
        // Orthonormalize in generation order so the column distribution is not pivot-biased.
        for c in cand {
            if extend_orthonormal(&mut basis, alloc::vec![c], 1e-8, n) == 0 {
                break;
            }
        }
        if basis.len() == n {
            return ComplexMatrix::from_columns(&basis);
        }
    }
}

/// Uniform draw from `[lo, hi)`.
pub fn uniform<R: Rng + ?Sized>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * rng.random::<f64>()
}
