//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot parse scalar `{0}` (expected `p` or `p/q`)")]
    ScalarParse(String),

    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("malformed block grouping: {0}")]
    MalformedGrouping(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("column {column} of the boundary matrix lies outside the cocycle span (inconsistent complex)")]
    SpanContainment { column: usize },

    #[error("subspace basis is not linearly independent")]
    DependentBasis,

    #[error("not an ideal: bracket [{witness}] leaves the subspace")]
    NotAnIdeal { witness: String },

    #[error("coboundary leaks out of the cochain space: {0}")]
    CochainLeakage(String),

    #[error("2-cocycle condition fails at {0}")]
    NotACocycle(String),

    #[error("representation invalid: {0}")]
    InvalidRepresentation(String),

    #[error("crossed module invalid: {0}")]
    InvalidCrossedModule(String),

    #[error("section contract violated: {0}")]
    SectionContract(String),

    #[error("value escapes ker(boundary): {0}")]
    KernelMembership(String),

    #[error("outer action ill-defined: {0}")]
    IllDefinedOuterAction(String),

    #[error("h-class construction requires arity 3, got {0}")]
    AritySupport(usize),

    #[error("bundle invalid: {0}")]
    Bundle(String),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}
