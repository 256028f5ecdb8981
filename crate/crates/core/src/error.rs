use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("zero vector has no direction")]
    ZeroVector,
    #[error("anchor and target coincide")]
    CoincidentPoints,
    #[error("anchor {0} is not a lattice point")]
    NonLatticeAnchor(String),
    #[error("invalid region: {0}")]
    InvalidRegion(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("ambiguous piecewise map: {0}")]
    AmbiguousMap(String),
    #[error("verification failure: {0}")]
    VerificationFailure(String),
    #[error("construction mismatch at {step}: expected {expected}, found {found}")]
    ConstructionMismatch {
        step: String,
        expected: String,
        found: String,
    },
    #[error("glue failure: {0}")]
    GlueFailure(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
