//! Non-Hermitian eigensolver: balancing, Householder reduction to upper Hessenberg form,
//! and single-shift complex QR iteration with Wilkinson shifts.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
// Shadowed by inherent methods whenever std is in the build graph.
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::Zero;

use super::matrix::normalized;
use super::{ComplexMatrix, EigenDecomposition};
use crate::error::{Error, Result};
use crate::tolerance::ToleranceConfig;

/// Eigenvalues and unit right eigenvectors of an arbitrary square matrix.
///
/// Fails with [`Error::NoConvergence`] once the QR iteration exceeds `100 n` sweeps in total.
pub fn eigen_general(m: &ComplexMatrix, _cfg: &ToleranceConfig) -> Result<EigenDecomposition> {
    let n = m.n();
    let mut a = m.clone();
    let d = balance(&mut a);
    let mut q = hessenberg(&mut a);
    schur_qr(&mut a, &mut q)?;

    let values: Vec<Complex64> = (0..n).map(|i| a[(i, i)]).collect();
    let y = triangular_eigenvectors(&a);
    let cols: Vec<Vec<Complex64>> = (0..n)
        .map(|k| {
            let x = q.mul_vec(&y[k]);
            let x: Vec<Complex64> = x.iter().zip(&d).map(|(z, s)| z * s).collect();
            normalized(&x).unwrap_or(x)
        })
        .collect();
    Ok(EigenDecomposition {
        values,
        vectors: ComplexMatrix::from_columns(&cols),
        hermitian: false,
    })
}

/// Parlett–Reinsch balancing with powers of two. Replaces `a` by `D⁻¹ a D` and returns `diag(D)`.
fn balance(a: &mut ComplexMatrix) -> Vec<f64> {
    let n = a.n();
    let mut d = vec![1.0; n];
    let radix = 2.0f64;
    let mut done = false;
    while !done {
        done = true;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += a[(j, i)].l1_norm();
                    r += a[(i, j)].l1_norm();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut g = r / radix;
            while c < g {
                f *= radix;
                c *= radix * radix;
            }
            g = r * radix;
            while c > g {
                f /= radix;
                c /= radix * radix;
            }
            if (c + r) / f < 0.95 * s {
                done = false;
                d[i] *= f;
                for j in 0..n {
                    a[(i, j)] /= f;
                    a[(j, i)] *= f;
                }
            }
        }
    }
    d
}

/// Reduces `a` to upper Hessenberg form in place and returns the unitary `Q` with
/// `a_in = Q a_out Q*`.
fn hessenberg(a: &mut ComplexMatrix) -> ComplexMatrix {
    let n = a.n();
    let mut q = ComplexMatrix::identity(n);
    for k in 0..n.saturating_sub(2) {
        let x: Vec<Complex64> = ((k + 1)..n).map(|i| a[(i, k)]).collect();
        let tail: f64 = x[1..].iter().map(|z| z.norm_sqr()).sum();
        if tail == 0.0 {
            continue;
        }
        let xnorm = (x[0].norm_sqr() + tail).sqrt();
        let phase = if x[0].is_zero() {
            Complex64::new(1.0, 0.0)
        } else {
            x[0] / x[0].norm()
        };
        let alpha = -phase * xnorm;
        let mut v = x;
        v[0] -= alpha;
        let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        v.iter_mut().for_each(|z| *z /= vnorm);
        // a <- (I - 2vv*) a on rows k+1..n
        for j in 0..n {
            let s: Complex64 = v
                .iter()
                .enumerate()
                .map(|(i, vi)| vi.conj() * a[(k + 1 + i, j)])
                .sum();
            for (i, vi) in v.iter().enumerate() {
                a[(k + 1 + i, j)] -= vi * s * 2.0;
            }
        }
        // a <- a (I - 2vv*) on columns k+1..n, and the same for q
        for mat in [&mut *a, &mut q] {
            for i in 0..n {
                let s: Complex64 = v
                    .iter()
                    .enumerate()
                    .map(|(j, vj)| mat[(i, k + 1 + j)] * vj)
                    .sum();
                for (j, vj) in v.iter().enumerate() {
                    mat[(i, k + 1 + j)] -= s * vj.conj() * 2.0;
                }
            }
        }
        for i in (k + 2)..n {
            a[(i, k)] = Complex64::zero();
        }
    }
    q
}

/// Rotation `[[c, s], [-s̄, c]]` mapping `(x, y)` to `(r, 0)`.
fn givens(x: Complex64, y: Complex64) -> (f64, Complex64) {
    let ax = x.norm();
    let ay = y.norm();
    if ay == 0.0 {
        return (1.0, Complex64::zero());
    }
    if ax == 0.0 {
        return (0.0, y.conj() / ay);
    }
    let nrm = ax.hypot(ay);
    (ax / nrm, (x / ax) * y.conj() / nrm)
}

fn rotate_rows(
    a: &mut ComplexMatrix,
    i: usize,
    c: f64,
    s: Complex64,
    cols: core::ops::Range<usize>,
) {
    for j in cols {
        let (x, y) = (a[(i, j)], a[(i + 1, j)]);
        a[(i, j)] = x * c + s * y;
        a[(i + 1, j)] = -s.conj() * x + y * c;
    }
}

fn rotate_cols(
    a: &mut ComplexMatrix,
    i: usize,
    c: f64,
    s: Complex64,
    rows: core::ops::Range<usize>,
) {
    for k in rows {
        let (x, y) = (a[(k, i)], a[(k, i + 1)]);
        a[(k, i)] = x * c + y * s.conj();
        a[(k, i + 1)] = -x * s + y * c;
    }
}

/// Drives the Hessenberg matrix `h` to upper triangular Schur form, accumulating into `z`.
fn schur_qr(h: &mut ComplexMatrix, z: &mut ComplexMatrix) -> Result<()> {
    let n = h.n();
    let max_iter = 100 * n;
    let mut total = 0usize;
    let mut its = 0usize;
    let mut hi = n - 1;
    let eps = f64::EPSILON;
    let hnorm = h.frobenius_norm();

    while hi > 0 {
        // Find the start of the active unreduced block.
        let mut lo = hi;
        while lo > 0 {
            let sub = h[(lo, lo - 1)].l1_norm();
            let mut diag = h[(lo - 1, lo - 1)].l1_norm() + h[(lo, lo)].l1_norm();
            if diag == 0.0 {
                diag = hnorm;
            }
            if sub <= eps * diag || sub <= f64::MIN_POSITIVE {
                h[(lo, lo - 1)] = Complex64::zero();
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            hi -= 1;
            its = 0;
            continue;
        }
        if total >= max_iter {
            return Err(Error::NoConvergence { iterations: total });
        }
        total += 1;
        its += 1;

        let shift = if its.is_multiple_of(10) {
            // Exceptional shift to break cycles.
            h[(hi, hi)] + Complex64::new(0.75 * h[(hi, hi - 1)].norm(), 0.0)
        } else {
            wilkinson(
                h[(hi - 1, hi - 1)],
                h[(hi - 1, hi)],
                h[(hi, hi - 1)],
                h[(hi, hi)],
            )
        };

        // Implicit single-shift QR sweep on rows/cols lo..=hi.
        let (mut x, mut y) = (h[(lo, lo)] - shift, h[(lo + 1, lo)]);
        for k in lo..hi {
            let (c, s) = givens(x, y);
            let col_start = if k > lo { k - 1 } else { lo };
            rotate_rows(h, k, c, s, col_start..n);
            let row_end = (k + 3).min(hi + 1);
            rotate_cols(h, k, c, s, 0..row_end);
            rotate_cols(z, k, c, s, 0..n);
            if k > lo {
                h[(k + 1, k - 1)] = Complex64::zero();
            }
            if k + 1 < hi {
                x = h[(k + 1, k)];
                y = h[(k + 2, k)];
            }
        }
    }
    Ok(())
}

/// Eigenvalue of the trailing 2×2 block closest to its last diagonal entry.
fn wilkinson(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let half_tr = (a + d) * 0.5;
    let det = a * d - b * c;
    let disc = (half_tr * half_tr - det).sqrt();
    let l1 = half_tr + disc;
    let l2 = half_tr - disc;
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// Eigenvectors of an upper triangular matrix by back substitution.
fn triangular_eigenvectors(t: &ComplexMatrix) -> Vec<Vec<Complex64>> {
    let n = t.n();
    let small = (f64::EPSILON * t.frobenius_norm()).max(f64::MIN_POSITIVE);
    (0..n)
        .map(|k| {
            let lambda = t[(k, k)];
            let mut y = vec![Complex64::zero(); n];
            y[k] = Complex64::new(1.0, 0.0);
            for j in (0..k).rev() {
                let s: Complex64 = ((j + 1)..=k).map(|m| t[(j, m)] * y[m]).sum();
                let mut den = t[(j, j)] - lambda;
                if den.norm() < small {
                    den = Complex64::new(small, 0.0);
                }
                y[j] = -s / den;
            }
            y
        })
        .collect()
}
