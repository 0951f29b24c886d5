//! Serializable views of analysis results. Field order is the output key order.

use num_complex::Complex64;
use pencil_persist::corpus::{CorpusOutcome, CorpusResult, HuntFamily, HuntSummary};
use pencil_persist::persistence::KernelWitness;
use pencil_persist::{
    BsReduction, CyclicityVerdict, ExceptionalSet, PersistenceReport, PersistentFamilyWitness,
    Root, TheoremCheck, VClassification,
};
use serde::Serialize;

use crate::matrix_file::MatrixFile;

#[derive(Debug, Clone, Copy, Serialize)]
pub struct ComplexJson {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ComplexJson {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

fn pairs(v: &[Complex64]) -> Vec<[f64; 2]> {
    v.iter().map(|z| [z.re, z.im]).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct RootJson {
    pub re: f64,
    pub im: f64,
    pub multiplicity: usize,
}

impl From<&Root> for RootJson {
    fn from(r: &Root) -> Self {
        Self {
            re: r.t.re,
            im: r.t.im,
            multiplicity: r.multiplicity,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ExceptionalJson {
    pub kind: &'static str,
    pub roots: Vec<RootJson>,
    pub real_roots_unit_interval: Vec<RootJson>,
}

impl From<&ExceptionalSet> for ExceptionalJson {
    fn from(s: &ExceptionalSet) -> Self {
        Self {
            kind: s.kind.as_str(),
            roots: s.roots.iter().map(Into::into).collect(),
            real_roots_unit_interval: s
                .real_roots_in_unit_interval
                .iter()
                .map(Into::into)
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VClassJson {
    pub psd: bool,
    pub nsd: bool,
    pub indefinite: bool,
    pub rank_plus: usize,
    pub rank_minus: usize,
    pub kernel_dim: usize,
}

impl From<&VClassification> for VClassJson {
    fn from(c: &VClassification) -> Self {
        Self {
            psd: c.psd,
            nsd: c.nsd,
            indefinite: c.indefinite,
            rank_plus: c.rank_plus,
            rank_minus: c.rank_minus,
            kernel_dim: c.kernel_dim,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CyclicityJson {
    pub n: usize,
    pub cyclic: bool,
    pub krylov_rank: usize,
    pub generator_count: usize,
}

impl CyclicityJson {
    pub fn new(n: usize, v: &CyclicityVerdict) -> Self {
        Self {
            n,
            cyclic: v.cyclic,
            krylov_rank: v.krylov_rank,
            generator_count: v.generator_count,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TheoremCheckJson {
    pub name: &'static str,
    pub applicable: bool,
    pub predicted: String,
    pub observed: String,
    pub consistent: bool,
}

impl From<&TheoremCheck> for TheoremCheckJson {
    fn from(c: &TheoremCheck) -> Self {
        Self {
            name: c.name,
            applicable: c.applicable,
            predicted: c.predicted.clone(),
            observed: c.observed.clone(),
            consistent: c.consistent,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessJson {
    pub t: ComplexJson,
    pub vector: Vec<[f64; 2]>,
    pub residual: f64,
}

impl From<&KernelWitness> for WitnessJson {
    fn from(w: &KernelWitness) -> Self {
        Self {
            t: w.t.into(),
            vector: pairs(&w.vector),
            residual: w.residual,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportJson {
    pub lambda0: f64,
    pub lambda0_in_spectrum: bool,
    pub exceptional: ExceptionalJson,
    pub cyclic: bool,
    pub krylov_rank: usize,
    pub v_class: VClassJson,
    pub generic_kernel_dimension: usize,
    pub theorem_checks: Vec<TheoremCheckJson>,
    pub measure_estimate: f64,
    pub witnesses: Vec<WitnessJson>,
    pub notes: Vec<&'static str>,
}

impl From<&PersistenceReport> for ReportJson {
    fn from(r: &PersistenceReport) -> Self {
        Self {
            lambda0: r.lambda0,
            lambda0_in_spectrum: r.lambda0_in_spectrum,
            exceptional: (&r.exceptional).into(),
            cyclic: r.cyclicity.cyclic,
            krylov_rank: r.cyclicity.krylov_rank,
            v_class: (&r.v_class).into(),
            generic_kernel_dimension: r.generic_kernel_dimension,
            theorem_checks: r.theorem_checks.iter().map(Into::into).collect(),
            measure_estimate: r.measure_estimate,
            witnesses: r.witnesses.iter().map(Into::into).collect(),
            notes: r.notes.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BsJson {
    pub e0: f64,
    pub mu: Vec<ComplexJson>,
    pub exceptional_t: Vec<ComplexJson>,
    pub count_unit_interval: usize,
}

impl BsJson {
    pub fn new(r: &BsReduction, count_unit_interval: usize) -> Self {
        Self {
            e0: r.e0,
            mu: r.mu.iter().copied().map(Into::into).collect(),
            exceptional_t: r.exceptional_t.iter().copied().map(Into::into).collect(),
            count_unit_interval,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PersistentWitnessJson {
    pub u0: Vec<[f64; 2]>,
    pub u1: Vec<[f64; 2]>,
    pub residuals: [f64; 3],
}

impl From<&PersistentFamilyWitness> for PersistentWitnessJson {
    fn from(w: &PersistentFamilyWitness) -> Self {
        Self {
            u0: pairs(&w.u0),
            u1: pairs(&w.u1),
            residuals: w.residuals,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CorpusCheckJson {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CorpusRunJson {
    pub id: String,
    pub passed: bool,
    pub checks: Vec<CorpusCheckJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<ReportJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exceptional: Option<ExceptionalJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub persistent_witness: Option<PersistentWitnessJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub probe: Option<WitnessJson>,
}

impl From<&CorpusOutcome> for CorpusRunJson {
    fn from(o: &CorpusOutcome) -> Self {
        let (report, exceptional, persistent_witness) = match &o.result {
            CorpusResult::Family {
                report,
                persistent_witness,
            } => (
                Some(report.into()),
                None,
                persistent_witness.as_ref().map(Into::into),
            ),
            CorpusResult::Pencil { exceptional, .. } => (None, Some(exceptional.into()), None),
        };
        Self {
            id: o.id.clone(),
            passed: o.passed(),
            checks: o
                .checks
                .iter()
                .map(|c| CorpusCheckJson {
                    name: c.name,
                    passed: c.passed,
                    detail: c.detail.clone(),
                })
                .collect(),
            report,
            exceptional,
            persistent_witness,
            probe: o.probe.as_ref().map(Into::into),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct HuntFamilyJson {
    pub trial: usize,
    pub seed: u64,
    pub h0: MatrixFile,
    pub v: MatrixFile,
    pub witness: PersistentWitnessJson,
    pub report: ReportJson,
}

impl From<&HuntFamily> for HuntFamilyJson {
    fn from(f: &HuntFamily) -> Self {
        Self {
            trial: f.trial,
            seed: f.seed,
            h0: MatrixFile::from_matrix(f.family.h0()),
            v: MatrixFile::from_matrix(f.family.v()),
            witness: (&f.witness).into(),
            report: (&f.report).into(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct HuntJson {
    pub dim: usize,
    pub trials: usize,
    pub seed: u64,
    pub successes: usize,
    pub success_rate: f64,
    pub families: Vec<HuntFamilyJson>,
}

impl From<&HuntSummary> for HuntJson {
    fn from(s: &HuntSummary) -> Self {
        Self {
            dim: s.dim,
            trials: s.trials,
            seed: s.seed,
            successes: s.families.len(),
            success_rate: s.success_rate(),
            families: s.families.iter().map(Into::into).collect(),
        }
    }
}
