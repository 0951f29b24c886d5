use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::f64::consts::TAU;

use num_complex::Complex64;
use num_traits::One;

use super::{
    classify_v, cyclicity_check, KernelWitness, PersistenceReport, PerturbationFamily, TheoremCheck,
};
use crate::birman_schwinger::{bs_reduce, count_in_unit_interval};
use crate::error::{Error, Result};
use crate::linalg::{
    det, eigen_hermitian, eigenprojection_from, hermitian_norm, hermitian_sqrt, norm,
};
use crate::pencil::{
    exceptional_set, generic_kernel_dimension, kernel_witness, pencil_from_eigenproblem,
    ExceptionalKind, PencilProblem,
};
use crate::random;
use crate::tolerance::ToleranceConfig;

/// Relative deviation allowed between `det(A − tB)` and `det(A) Π(1 + tμ)` on the unit circle.
const BS_AGREEMENT_TOL: f64 = 1e-6;
/// Relative residual allowed for kernel vectors of a singular pencil.
const WITNESS_RESIDUAL_TOL: f64 = 1e-6;

const STREAM_WITNESS: u64 = 2;
const STREAM_MEASURE: u64 = 3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalyzeOptions {
    pub seed: u64,
    /// Window `ε` of the measure surrogate.
    pub measure_epsilon: f64,
    pub measure_samples: usize,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        Self {
            seed: 0,
            measure_epsilon: 1e-6,
            measure_samples: 1000,
        }
    }
}

/// [`analyze_with`] using default measure settings and the given seed.
pub fn analyze(
    fam: &PerturbationFamily,
    lambda0: f64,
    cfg: &ToleranceConfig,
    seed: u64,
) -> Result<PersistenceReport> {
    analyze_with(
        fam,
        lambda0,
        cfg,
        &AnalyzeOptions {
            seed,
            ..AnalyzeOptions::default()
        },
    )
}

/// Full persistence analysis of `fam` at `λ0`. Deterministic for fixed inputs and seed.
pub fn analyze_with(
    fam: &PerturbationFamily,
    lambda0: f64,
    cfg: &ToleranceConfig,
    opts: &AnalyzeOptions,
) -> Result<PersistenceReport> {
    cfg.validate()?;
    let n = fam.n();
    let spectrum = eigen_hermitian(fam.h0(), cfg)?;
    let gap = spectrum
        .values
        .iter()
        .map(|z| (z.re - lambda0).abs())
        .fold(f64::INFINITY, f64::min);
    let lambda0_in_spectrum = gap <= cfg.tol_cluster * fam.h0().frobenius_norm().max(1.0);

    let pencil = pencil_from_eigenproblem(fam.h0(), fam.v(), lambda0, cfg)?;
    let exceptional = exceptional_set(&pencil, cfg)?;
    let cyclicity = cyclicity_check(fam, cfg);
    let v_class = classify_v(fam, cfg)?;
    let generic_kernel_dimension = generic_kernel_dimension(&pencil, cfg, opts.seed);
    let kind = exceptional.kind;
    let total = exceptional.total_multiplicity();

    let mut checks = Vec::with_capacity(4);

    checks.push(if v_class.kernel_dim == 0 {
        TheoremCheck {
            name: "invertible-v-finite",
            applicable: true,
            predicted: format!("Finite with total multiplicity {n}"),
            observed: format!("{} with total multiplicity {total}", kind.as_str()),
            consistent: kind == ExceptionalKind::Finite && total == n,
        }
    } else {
        inapplicable(
            "invertible-v-finite",
            format!("ker V has dimension {}", v_class.kernel_dim),
        )
    });

    checks.push(if v_class.psd && cyclicity.cyclic {
        TheoremCheck {
            name: "psd-cyclic-not-all-complex",
            applicable: true,
            predicted: "not AllComplex".to_string(),
            observed: kind.as_str().to_string(),
            consistent: kind != ExceptionalKind::AllComplex,
        }
    } else {
        let why = match (v_class.psd, cyclicity.cyclic) {
            (false, false) => "V is not PSD and ran V is not cyclic",
            (false, true) => "V is not PSD",
            _ => "ran V is not cyclic for H0",
        };
        inapplicable("psd-cyclic-not-all-complex", why.to_string())
    });

    checks.push(if lambda0_in_spectrum {
        inapplicable("birman-schwinger-agreement", "λ0 lies in σ(H0)".to_string())
    } else {
        birman_schwinger_check(fam, &pencil, lambda0, cfg)?
    });

    let mut witnesses = Vec::new();
    checks.push(if kind == ExceptionalKind::AllComplex {
        let mut rng = random::seeded_stream(opts.seed, STREAM_WITNESS);
        let scale = fam.h0().frobenius_norm().max(1.0) + fam.v().frobenius_norm();
        let mut ok = true;
        for _ in 0..2 {
            let t = Complex64::new(random::uniform(&mut rng, 0.0, 1.0), 0.0);
            match kernel_witness(&pencil, t, cfg).into_iter().next() {
                Some(vector) => {
                    let residual = norm(&pencil.at(t).mul_vec(&vector));
                    ok &= residual <= WITNESS_RESIDUAL_TOL * scale;
                    witnesses.push(KernelWitness {
                        t,
                        vector,
                        residual,
                    });
                }
                None => ok = false,
            }
        }
        TheoremCheck {
            name: "persistent-kernel-witness",
            applicable: true,
            predicted: "kernel vector at every sampled t".to_string(),
            observed: format!("{} of 2 sampled t carry a kernel vector", witnesses.len()),
            consistent: ok,
        }
    } else {
        inapplicable(
            "persistent-kernel-witness",
            format!("exceptional set is {}", kind.as_str()),
        )
    });

    if let Some(failed) = checks.iter().find(|c| !c.consistent) {
        return Err(Error::InternalInconsistency {
            check: failed.name.to_string(),
            predicted: failed.predicted.clone(),
            observed: failed.observed.clone(),
        });
    }

    let measure_estimate = measure_estimate_stream(
        fam,
        lambda0,
        opts.measure_epsilon,
        opts.measure_samples,
        cfg,
        opts.seed,
    )?;

    let mut notes = alloc::vec![
        "finite dimension: every V is compact, so compactness hypotheses hold trivially",
    ];
    if !lambda0_in_spectrum {
        notes.push(
            "Birman–Schwinger applies only because λ0 ∉ σ(H0); it says nothing about eigenvalues of H0 that persist",
        );
    }

    Ok(PersistenceReport {
        family: fam.clone(),
        lambda0,
        lambda0_in_spectrum,
        exceptional,
        cyclicity,
        v_class,
        generic_kernel_dimension,
        theorem_checks: checks,
        witnesses,
        measure_estimate,
        notes,
    })
}

fn inapplicable(name: &'static str, why: alloc::string::String) -> TheoremCheck {
    TheoremCheck {
        name,
        applicable: false,
        predicted: format!("inapplicable: {why}"),
        observed: "-".to_string(),
        consistent: true,
    }
}

/// Compares `det(A − tB)` with `det(A) Π_k (1 + t μ_k)`, `μ_k` the Birman–Schwinger
/// eigenvalues, on the unit circle. Both sides are the same polynomial when `A` is invertible.
fn birman_schwinger_check(
    fam: &PerturbationFamily,
    pencil: &PencilProblem,
    lambda0: f64,
    cfg: &ToleranceConfig,
) -> Result<TheoremCheck> {
    let bs = bs_reduce(fam.h0(), fam.v(), lambda0, cfg)?;
    let det_a = det(pencil.a());
    let nodes = pencil.n() + 1;
    let mut worst: f64 = 0.0;
    let mut top: f64 = 0.0;
    for k in 0..nodes {
        let t = Complex64::from_polar(1.0, TAU * k as f64 / nodes as f64);
        let direct = det(&pencil.at(t));
        let product = bs
            .mu
            .iter()
            .fold(det_a, |acc, mu| acc * (Complex64::one() + t * mu));
        worst = worst.max((direct - product).norm());
        top = top.max(direct.norm()).max(product.norm());
    }
    let deviation = if top > 0.0 { worst / top } else { 0.0 };
    Ok(TheoremCheck {
        name: "birman-schwinger-agreement",
        applicable: true,
        predicted: format!("det(A − tB) = det(A)·Π(1 + tμ) within {BS_AGREEMENT_TOL:e}"),
        observed: format!(
            "relative deviation {deviation:.3e}; {} finite couplings, {} in [0, 1]",
            bs.exceptional_t.len(),
            count_in_unit_interval(&bs, cfg)
        ),
        consistent: deviation <= BS_AGREEMENT_TOL,
    })
}

/// `‖V^{1/2} E_{H_t}({λ0}) V^{1/2}‖` for each `t`, where `E_{H_t}({λ0})` is the eigenprojection
/// of `H_t = H0 + tV` at `λ0`. Requires `V ≥ 0`.
pub fn projection_vanishing_check(
    fam: &PerturbationFamily,
    lambda0: f64,
    tset: &[f64],
    cfg: &ToleranceConfig,
) -> Result<Vec<(f64, f64)>> {
    let root = hermitian_sqrt(fam.v(), cfg)?;
    tset.iter()
        .map(|&t| {
            let ht = fam.at(Complex64::new(t, 0.0));
            let eig = eigen_hermitian(&ht, cfg)?;
            let p = eigenprojection_from(
                &eig,
                lambda0,
                cfg.tol_cluster * ht.frobenius_norm().max(1.0),
            );
            let sandwich = &(&root * &p) * &root;
            Ok((t, hermitian_norm(&sandwich, cfg)?))
        })
        .collect()
}

/// Fraction of couplings `t ∈ [0, 1]` with `dist(λ0, σ(H_t)) < ε`.
///
/// One uniform draw is taken in each of `samples` equal strata of `[0, 1]`, so the estimate
/// is deterministic for a given seed and unbiased for the Lebesgue measure of the set.
pub fn measure_estimate(
    fam: &PerturbationFamily,
    lambda0: f64,
    epsilon: f64,
    samples: usize,
    cfg: &ToleranceConfig,
    seed: u64,
) -> Result<f64> {
    measure_estimate_stream(fam, lambda0, epsilon, samples, cfg, seed)
}

fn measure_estimate_stream(
    fam: &PerturbationFamily,
    lambda0: f64,
    epsilon: f64,
    samples: usize,
    cfg: &ToleranceConfig,
    seed: u64,
) -> Result<f64> {
    if epsilon.is_nan() || epsilon <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "measure window must be positive, got {epsilon}"
        )));
    }
    if samples == 0 {
        return Err(Error::InvalidArgument(
            "measure estimate needs at least one sample".to_string(),
        ));
    }
    let mut rng = random::seeded_stream(seed, STREAM_MEASURE);
    let mut hits = 0usize;
    for k in 0..samples {
        let t = (k as f64 + random::uniform(&mut rng, 0.0, 1.0)) / samples as f64;
        let eig = eigen_hermitian(&fam.at(Complex64::new(t, 0.0)), cfg)?;
        if eig.values.iter().any(|z| (z.re - lambda0).abs() < epsilon) {
            hits += 1;
        }
    }
    Ok(hits as f64 / samples as f64)
}
