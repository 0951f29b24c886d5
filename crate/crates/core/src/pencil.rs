//! Linear pencils `A − tB` and the set of couplings `t` at which they are singular.
//!
//! The determinant `p(t) = det(A − tB)` is a polynomial of degree at most `n`. It is
//! recovered by evaluating the determinant on `n + 1` equally spaced nodes of a circle and
//! inverting the discrete Fourier transform. A pencil whose determinant vanishes at every
//! node (to a scaled threshold) is singular: every `t ∈ ℂ` is an eigenvalue. Otherwise the
//! roots of `p` are found as eigenvalues of a companion matrix.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::TAU;

use num_complex::Complex64;
// Shadowed by inherent methods whenever std is in the build graph.
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{
    eigen_general, hermitian_inverse_sqrt, hermitian_sqrt, nullspace_basis, rank, spectral_norm,
    ComplexMatrix, Lu,
};
use crate::random;
use crate::tolerance::ToleranceConfig;

/// The eigenproblem `A f = t B f`.
#[derive(Debug, Clone, PartialEq)]
pub struct PencilProblem {
    a: ComplexMatrix,
    b: ComplexMatrix,
}

impl PencilProblem {
    pub fn new(a: ComplexMatrix, b: ComplexMatrix) -> Result<Self> {
        if a.n() != b.n() {
            return Err(Error::DimensionMismatch {
                left: a.n(),
                right: b.n(),
            });
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> &ComplexMatrix {
        &self.a
    }

    pub fn b(&self) -> &ComplexMatrix {
        &self.b
    }

    pub fn n(&self) -> usize {
        self.a.n()
    }

    /// `A − tB`.
    pub fn at(&self, t: Complex64) -> ComplexMatrix {
        self.a.sub_scaled(t, &self.b)
    }

    /// `(S* A S, S* B S)`; congruent pencils share their singular couplings.
    pub fn congruent(&self, s: &ComplexMatrix) -> Self {
        let sh = s.adjoint();
        Self {
            a: &(&sh * &self.a) * s,
            b: &(&sh * &self.b) * s,
        }
    }
}

/// Rewrites `(H0 + tV) ψ = λ0 ψ` as `(λ0 I − H0) ψ = t V ψ`.
pub fn pencil_from_eigenproblem(
    h0: &ComplexMatrix,
    v: &ComplexMatrix,
    lambda0: f64,
    cfg: &ToleranceConfig,
) -> Result<PencilProblem> {
    if h0.n() != v.n() {
        return Err(Error::DimensionMismatch {
            left: h0.n(),
            right: v.n(),
        });
    }
    let h0 = h0.hermitian_part_checked(cfg.tol_herm)?;
    let v = v.hermitian_part_checked(cfg.tol_herm)?;
    let a = h0.scale_real(-1.0).shift(Complex64::new(lambda0, 0.0));
    PencilProblem::new(a, v)
}

/// Which part of `V = V₁ − V₂` is inverted when reducing to a pencil.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InvertibleSide {
    V1,
    V2,
}

/// Congruence reduction for `V = V₁ − V₂` with the designated `V_j` positive definite:
///
/// - `V1`: `A = V₁^{-1/2} H0 V₁^{-1/2} − λ0 V₁^{-1}`, `B = −(I − V₁^{-1/2} V₂ V₁^{-1/2})`
/// - `V2`: `A = V₂^{-1/2} H0 V₂^{-1/2} − λ0 V₂^{-1}`, `B = I − V₂^{-1/2} V₁ V₂^{-1/2}`
///
/// `A f = t B f` holds for `f = V_j^{1/2} ψ` exactly when `(H0 + tV) ψ = λ0 ψ`.
pub fn reduce_to_pencil(
    h0: &ComplexMatrix,
    v1: &ComplexMatrix,
    v2: &ComplexMatrix,
    lambda0: f64,
    side: InvertibleSide,
    cfg: &ToleranceConfig,
) -> Result<PencilProblem> {
    let n = h0.n();
    for m in [v1, v2] {
        if m.n() != n {
            return Err(Error::DimensionMismatch {
                left: n,
                right: m.n(),
            });
        }
    }
    let h0 = h0.hermitian_part_checked(cfg.tol_herm)?;
    let (inv, other, sign) = match side {
        InvertibleSide::V1 => (v1, v2, -1.0),
        InvertibleSide::V2 => (v2, v1, 1.0),
    };
    // The non-inverted factor only has to be PSD; the square root checks that.
    hermitian_sqrt(other, cfg)?;
    let r = hermitian_inverse_sqrt(inv, cfg)?;
    let other = other.hermitian_part_checked(cfg.tol_herm)?;
    let r_inv2 = &r * &r;
    let a = &(&(&r * &h0) * &r) - &r_inv2.scale_real(lambda0);
    let b = &ComplexMatrix::identity(n) - &(&(&r * &other) * &r);
    PencilProblem::new(a, b.scale_real(sign))
}

/// `p(t) = det(A − tB)` in ascending powers of `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct CharPoly {
    pub coefficients: Vec<Complex64>,
    pub identically_zero: bool,
    /// Radius of the interpolation circle.
    pub radius: f64,
    /// `max |p(node)|` over the interpolation nodes.
    pub node_max: f64,
    /// Largest reciprocal condition number `1 / (‖M‖ ‖M⁻¹‖)` of `M = A − tB` over the nodes.
    pub node_rcond_max: f64,
    /// `tol_zero_poly` times the largest natural determinant scale `|det M| / rcond(M)` over
    /// the nodes; when the pencil is singular every coefficient is below it.
    pub zero_threshold: f64,
}

impl CharPoly {
    /// Degree bound `n`.
    pub fn degree_bound(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn eval(&self, t: Complex64) -> Complex64 {
        self.coefficients
            .iter()
            .rev()
            .fold(Complex64::zero(), |acc, &c| acc * t + c)
    }
}

/// Interpolates `det(A − tB)` on `n + 1` nodes of the circle of radius
/// `max(1, ‖A‖₂ / max(‖B‖₂, 1))`.
///
/// The polynomial is declared identically zero when `A − tB` is numerically singular
/// (reciprocal condition number at most `tol_zero_poly`) at every node. A nonzero polynomial
/// of degree at most `n` cannot vanish on all `n + 1` nodes, and comparing `|det|` with its own
/// natural scale keeps the decision independent of how the entries are scaled.
pub fn char_poly(p: &PencilProblem, cfg: &ToleranceConfig) -> Result<CharPoly> {
    let n = p.n();
    let na = spectral_norm(&p.a, cfg)?;
    let nb = spectral_norm(&p.b, cfg)?;
    let radius = (na / nb.max(1.0)).max(1.0);
    let m = n + 1;
    let nodes: Vec<Complex64> = (0..m)
        .map(|k| Complex64::from_polar(1.0, TAU * k as f64 / m as f64))
        .collect();
    let mut values = Vec::with_capacity(m);
    let mut node_rcond_max: f64 = 0.0;
    let mut scale_max: f64 = 0.0;
    for w in &nodes {
        let (d, rcond, scale) = node_conditioning(&p.at(w * radius));
        values.push(d);
        node_rcond_max = node_rcond_max.max(rcond);
        scale_max = scale_max.max(scale);
    }
    let node_max = values.iter().map(|z| z.norm()).fold(0.0, f64::max);

    // c_j r^j = (1/m) Σ_k p(r ω^k) ω^{-jk}
    let coefficients = (0..m)
        .map(|j| {
            let s: Complex64 = values
                .iter()
                .enumerate()
                .map(|(k, v)| v * nodes[(j * k) % m].conj())
                .sum();
            s / (m as f64) / radius.powi(j as i32)
        })
        .collect();

    Ok(CharPoly {
        coefficients,
        identically_zero: node_rcond_max <= cfg.tol_zero_poly,
        radius,
        node_max,
        node_rcond_max,
        zero_threshold: cfg.tol_zero_poly * scale_max,
    })
}

/// `(det M, 1 / (‖M‖_F ‖M⁻¹‖_F), |det M| / rcond)`. An exactly singular `M` gets rcond 0 and the
/// Hadamard-style scale `‖M‖_Fⁿ`.
fn node_conditioning(m: &ComplexMatrix) -> (Complex64, f64, f64) {
    let n = m.n();
    let lu = Lu::factor(m);
    let d = lu.det();
    let norm = m.frobenius_norm();
    let fallback = (d, 0.0, norm.powi(n as i32));
    if d.is_zero() || norm == 0.0 {
        return fallback;
    }
    let mut inv_sq = 0.0;
    let mut col = vec![Complex64::zero(); n];
    for j in 0..n {
        col.fill(Complex64::zero());
        col[j] = Complex64::one();
        lu.solve_in_place(&mut col);
        inv_sq += col.iter().map(|z| z.norm_sqr()).sum::<f64>();
    }
    if !inv_sq.is_finite() {
        return fallback;
    }
    let rcond = 1.0 / (norm * inv_sq.sqrt());
    (d, rcond, d.norm() / rcond)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExceptionalKind {
    /// `p` is a nonzero constant: no coupling works.
    Empty,
    /// Finitely many couplings, listed with multiplicity.
    Finite,
    /// `p ≡ 0`: every `t ∈ ℂ` is an eigenvalue of the pencil.
    AllComplex,
}

impl ExceptionalKind {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Empty => "Empty",
            Self::Finite => "Finite",
            Self::AllComplex => "AllComplex",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub t: Complex64,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExceptionalSet {
    pub kind: ExceptionalKind,
    pub roots: Vec<Root>,
    /// Roots with `|Im t| ≤ tol_real` and `Re t ∈ [0, 1]` (widened by `tol_real`).
    pub real_roots_in_unit_interval: Vec<Root>,
}

impl ExceptionalSet {
    pub fn total_multiplicity(&self) -> usize {
        self.roots.iter().map(|r| r.multiplicity).sum()
    }

    /// Roots expanded by multiplicity.
    pub fn root_multiset(&self) -> Vec<Complex64> {
        self.roots
            .iter()
            .flat_map(|r| core::iter::repeat_n(r.t, r.multiplicity))
            .collect()
    }

    fn from_roots(roots: Vec<Complex64>, cfg: &ToleranceConfig) -> Self {
        if roots.is_empty() {
            return Self {
                kind: ExceptionalKind::Empty,
                roots: Vec::new(),
                real_roots_in_unit_interval: Vec::new(),
            };
        }
        let roots = cluster_roots(roots, cfg.tol_cluster);
        let real_roots_in_unit_interval = roots
            .iter()
            .filter(|r| is_real_unit(r.t, cfg.tol_real))
            .copied()
            .collect();
        Self {
            kind: ExceptionalKind::Finite,
            roots,
            real_roots_in_unit_interval,
        }
    }
}

pub(crate) fn is_real_unit(t: Complex64, tol_real: f64) -> bool {
    t.im.abs() <= tol_real && t.re >= -tol_real && t.re <= 1.0 + tol_real
}

/// Singular couplings of the pencil.
pub fn exceptional_set(p: &PencilProblem, cfg: &ToleranceConfig) -> Result<ExceptionalSet> {
    let poly = char_poly(p, cfg)?;
    if poly.identically_zero {
        return Ok(ExceptionalSet {
            kind: ExceptionalKind::AllComplex,
            roots: Vec::new(),
            real_roots_in_unit_interval: Vec::new(),
        });
    }
    let roots = polynomial_roots(&poly.coefficients, poly.radius, cfg)?;
    Ok(ExceptionalSet::from_roots(roots, cfg))
}

/// Roots of `Σ c_j t^j` through the companion matrix of the polynomial in `s = t / radius`.
///
/// Coefficients whose scaled magnitude `|c_j| radiusʲ` is at most `tol_rank` times the
/// largest are treated as zero: trailing ones lower the degree, leading ones become exact
/// roots at `t = 0`.
pub fn polynomial_roots(
    coeffs: &[Complex64],
    radius: f64,
    cfg: &ToleranceConfig,
) -> Result<Vec<Complex64>> {
    let scaled: Vec<Complex64> = coeffs
        .iter()
        .enumerate()
        .map(|(j, c)| c * radius.powi(j as i32))
        .collect();
    let top = scaled.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if top == 0.0 {
        return Ok(Vec::new());
    }
    let noise = cfg.tol_rank * top;
    let significant = |z: &Complex64| z.norm() > noise;
    let hi = scaled.iter().rposition(significant).unwrap_or(0);
    let lo = scaled.iter().position(significant).unwrap_or(0);

    let mut roots = vec![Complex64::zero(); lo];
    let degree = hi - lo;
    if degree == 0 {
        return Ok(roots);
    }
    let lead = scaled[hi];
    let monic: Vec<Complex64> = scaled[lo..hi].iter().map(|c| c / lead).collect();
    let companion = ComplexMatrix::from_fn(degree, |i, j| {
        if j == degree - 1 {
            -monic[i]
        } else if i == j + 1 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::zero()
        }
    });
    let eig = eigen_general(&companion, cfg)?;
    roots.extend(eig.values.iter().map(|s| s * radius));
    Ok(roots)
}

/// Single-linkage clustering: roots closer than `tol · max(1, |t|)` share a cluster, whose
/// mean becomes the representative and whose size becomes the multiplicity.
pub fn cluster_roots(roots: Vec<Complex64>, tol: f64) -> Vec<Root> {
    let n = roots.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let scale = roots[i].norm().max(roots[j].norm()).max(1.0);
            if (roots[i] - roots[j]).norm() <= tol * scale {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let mut clusters: Vec<(usize, Complex64, usize)> = Vec::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        match clusters.iter_mut().find(|c| c.0 == r) {
            Some(c) => {
                c.1 += roots[i];
                c.2 += 1;
            }
            None => clusters.push((r, roots[i], 1)),
        }
    }
    let mut out: Vec<Root> = clusters
        .into_iter()
        .map(|(_, sum, m)| Root {
            t: sum / m as f64,
            multiplicity: m,
        })
        .collect();
    // Real parts are compared on a grid of width `tol` so that conjugate pairs whose real
    // parts differ only by rounding still come out ordered by imaginary part (`+ 0.0` folds −0).
    let key = |r: &Root| (r.t.re / tol).round() + 0.0;
    out.sort_by(|a, b| key(a).total_cmp(&key(b)).then(a.t.im.total_cmp(&b.t.im)));
    out
}

/// `n − max rank(A − tB)` over five seeded couplings on the circle of radius
/// `1 + ‖A‖ / max(‖B‖, tol_rank)`: the kernel dimension shared by all but finitely many `t`.
pub fn generic_kernel_dimension(p: &PencilProblem, cfg: &ToleranceConfig, seed: u64) -> usize {
    let mut rng = random::seeded(seed);
    let radius = 1.0 + p.a.frobenius_norm() / p.b.frobenius_norm().max(cfg.tol_rank);
    let max_rank = (0..5)
        .map(|_| {
            let theta = random::uniform(&mut rng, 0.0, TAU);
            rank(&p.at(Complex64::from_polar(radius, theta)), cfg)
        })
        .max()
        .unwrap_or(0);
    p.n() - max_rank
}

/// Orthonormal basis of `ker(A − tB)`; empty when the pencil is invertible at `t`.
pub fn kernel_witness(
    p: &PencilProblem,
    t: Complex64,
    cfg: &ToleranceConfig,
) -> Vec<Vec<Complex64>> {
    nullspace_basis(&p.at(t), cfg)
}
