//! Error types shared across the crate.

use thiserror::Error;

/// Coarse classification used by callers that map errors to exit codes:
/// bad input versus a numerical invariant breaking down mid-computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorCategory {
    /// The caller handed us something invalid (momenta, partitions, configs).
    InvalidInput,
    /// A numerical invariant degraded beyond its tolerance during computation.
    Numerical,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("axis must be a unit vector (|axis| = {norm})")]
    NonUnitAxis { norm: f64 },

    #[error("mass must be positive and finite (got {mass})")]
    NonPositiveMass { mass: f64 },

    #[error("{context}: matrix violates Lorentz-group invariants (deviation {deviation:.3e} > tol {tolerance:.3e})")]
    MetricViolation {
        context: &'static str,
        deviation: f64,
        tolerance: f64,
    },

    #[error("little-group violation: residual time mixing {residual:.3e} exceeds {tolerance:.3e}")]
    LittleGroupViolation { residual: f64, tolerance: f64 },

    #[error("state must have at least one term")]
    EmptyState,

    #[error("state has zero norm")]
    ZeroNorm,

    #[error("particle count mismatch: expected {expected}, found {found}")]
    ParticleCountMismatch { expected: usize, found: usize },

    #[error("momenta coincide under the merge tolerance; the momentum qubit degenerates")]
    CoincidentMomenta,

    #[error("state norm drifted to {norm} (|norm - 1| > {tolerance:.3e})")]
    NormDrift { norm: f64, tolerance: f64 },

    #[error("partition keeps factor {factor} which is not present in this density matrix")]
    FactorNotPresent { factor: String },

    #[error("partition must keep at least one factor")]
    EmptyPartition,

    #[error("invalid partition selector {selector:?}: {reason}")]
    BadSelector { selector: String, reason: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("state spec: {0}")]
    SpecFile(String),
}

impl Error {
    /// Whether this error signals numerical degradation rather than bad input.
    pub fn category(&self) -> ErrorCategory {
        match self {
            Error::MetricViolation { .. }
            | Error::LittleGroupViolation { .. }
            | Error::NormDrift { .. } => ErrorCategory::Numerical,
            _ => ErrorCategory::InvalidInput,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
