use alloc::string::String;

/// Errors produced by the numerical kernels and the analysis engine.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("matrix dimension must be at least 1")]
    EmptyMatrix,
    #[error("expected {expected} entries for an {n}x{n} matrix, got {got}")]
    EntryCount {
        n: usize,
        expected: usize,
        got: usize,
    },
    #[error("matrix entry {index} is not finite")]
    NonFinite { index: usize },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("matrix is not Hermitian (relative asymmetry {asymmetry:.3e})")]
    NotHermitian { asymmetry: f64 },
    #[error("matrix is not positive semidefinite (smallest eigenvalue {min_eigenvalue:.3e})")]
    NotPsd { min_eigenvalue: f64 },
    #[error("matrix is not positive definite (smallest eigenvalue {min_eigenvalue:.3e})")]
    NotPositiveDefinite { min_eigenvalue: f64 },
    #[error("matrix is singular to working precision (pivot {pivot:.3e} at step {step})")]
    Singular { step: usize, pivot: f64 },
    #[error("eigenvalue iteration did not converge within {iterations} iterations")]
    NoConvergence { iterations: usize },
    #[error("E0 = {e0} lies in the spectrum of H0 (distance {distance:.3e})")]
    E0InSpectrum { e0: f64, distance: f64 },
    #[error("invalid tolerance {name} = {value}: must lie in (0, 1)")]
    InvalidTolerance { name: &'static str, value: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("theorem check `{check}` failed: predicted {predicted}, observed {observed}")]
    InternalInconsistency {
        check: String,
        predicted: String,
        observed: String,
    },
    #[error("no persistent family found after {attempts} attempts")]
    SearchExhausted { attempts: usize },
    #[error("unknown corpus instance `{0}`")]
    UnknownInstance(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
