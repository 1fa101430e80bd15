use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("scalars from different fields were combined")]
    FieldMismatch,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("relation {index} is inconsistent: {reason}")]
    InconsistentRelation { index: usize, reason: String },
    #[error("relation {index} is not admissible: path {path:?} has length < 2")]
    NotAdmissible { index: usize, path: Vec<String> },
    #[error("presentation is not finite dimensional below degree {cap}: {reason}")]
    NotFiniteDimensional { cap: usize, reason: String },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("algebra is not split basic: {0}")]
    NotSplitBasic(String),
    #[error("radical computation failed: {0}")]
    RadicalComputationFailed(String),
    #[error("invalid anti-automorphism: {0}")]
    InvalidAntiAutomorphism(String),
    #[error("dimension {dim} exceeds the configured cap {cap}")]
    DimensionCapExceeded { dim: usize, cap: usize },
    #[error("unknown builtin {0:?}")]
    UnknownBuiltin(String),
    #[error("bad parameters for builtin {name}: {reason}")]
    BadParams { name: String, reason: String },
    #[error("objects live over different algebras")]
    AlgebraMismatch,
    #[error("unsupported shift {0}; only -1, 0, 1 are meaningful between 2-term complexes")]
    UnsupportedShift(i32),
    #[error("endomorphism ring is not split over the base field: {0}")]
    NotSplitEndomorphism(String),
    #[error("summand index {0} out of range")]
    NotASummand(usize),
    #[error("mutation leaves the 2-term window")]
    NotTwoTerm,
    #[error("census is incomplete")]
    IncompleteCensus,
    #[error("vertex {0} out of range")]
    BadVertex(usize),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// True for errors caused by malformed input rather than by mathematics.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Parse(_)
                | Error::Syntax { .. }
                | Error::InvalidQuiver(_)
                | Error::InconsistentRelation { .. }
                | Error::NotAdmissible { .. }
                | Error::UnknownBuiltin(_)
                | Error::BadParams { .. }
                | Error::BadVertex(_)
                | Error::NotASummand(_)
                | Error::UnsupportedShift(_)
                | Error::FieldMismatch
        )
    }
}
