use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("truncation mismatch: {0} vs {1}")]
    TruncationMismatch(u32, u32),

    #[error("non-invertible series: constant term is zero")]
    NonInvertible,

    #[error("monomial degree {degree} exceeds truncation order {truncation}")]
    DegreeOverflow { degree: u32, truncation: u32 },

    #[error("multi-index component out of range")]
    OutOfRange,

    #[error("elements belong to algebras with different parameters")]
    ParamsMismatch,

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("primal and dual tokens cannot be mixed in one expression")]
    MixedTokens,

    #[error("bracket of basis elements is not linear: {0}")]
    NonLinearBracket(String),

    #[error("cocommutator has a residue outside the exterior square: {0}")]
    NonPrimitiveResidue(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
