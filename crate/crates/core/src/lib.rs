//! Exceptional couplings of finite-dimensional self-adjoint families `H_t = H0 + tV`.
//!
//! For a target `λ0` the crate computes the set of couplings `t ∈ ℂ` at which `λ0` is an
//! eigenvalue of `H_t`, classifies it as empty, finite or all of ℂ, and checks the
//! structural facts that constrain it: cyclicity of `ran V`, the sign of `V`, the
//! Birman–Schwinger reduction, spectral projections, and persistent kernel families.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod birman_schwinger;
pub mod corpus;
pub mod error;
pub mod fixtures;
pub mod linalg;
pub mod pencil;
pub mod persistence;
pub mod random;
pub mod tolerance;

pub use num_complex::Complex64;

pub use birman_schwinger::{bs_reduce, count_in_unit_interval, BsReduction};
pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, EigenDecomposition};
pub use pencil::{CharPoly, ExceptionalKind, ExceptionalSet, PencilProblem, Root};
pub use persistence::{
    analyze, classify_v, construct_persistent_family, cyclicity_check, measure_estimate,
    projection_vanishing_check, AnalyzeOptions, CyclicityVerdict, PersistenceReport,
    PersistentFamilyWitness, PerturbationFamily, TheoremCheck, VClassification,
};
pub use tolerance::ToleranceConfig;
