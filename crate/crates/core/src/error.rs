use thiserror::Error;

use crate::presentation::Diagnostic;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("syntax error at {line}:{col}: expected {expected}")]
    Syntax {
        line: usize,
        col: usize,
        expected: String,
    },

    /// A presentation failed validation; carries the first diagnostic.
    #[error("{0}")]
    Presentation(Diagnostic),

    #[error("bad field: {0}")]
    BadField(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("completion exceeded degree bound {bound} (rule of length {degree})")]
    DegreeBoundExceeded { bound: usize, degree: usize },

    #[error("algebra is infinite dimensional: normal words around cycle {witness} are unbounded")]
    InfiniteDimensional { witness: String },

    #[error("consistency check `{check}` failed at {witness}")]
    ConsistencyFailure { check: String, witness: String },

    #[error("radical is not nilpotent")]
    NotNilpotent,

    #[error("left and right socles differ (dims {left} vs {right}); algebra is not selfinjective")]
    SocleMismatch { left: usize, right: usize },

    #[error("form is not symmetric: ({left}, {right}) differs from ({right}, {left})")]
    NotSymmetric { left: String, right: String },

    #[error("form is degenerate: {0}")]
    Degenerate(String),

    #[error("invariant violation: {0}")]
    InvariantViolation(String),

    #[error("characteristic mismatch: {0} vs {1}")]
    CharacteristicMismatch(u32, u32),

    #[error("enumeration budget exceeded: {needed} elements > budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("bad family parameters: {0}")]
    BadParameters(String),

    #[error("{0}")]
    Usage(String),
}

impl Error {
    /// Stable machine-readable name, used by the CLI and the C ABI.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Syntax { .. } => "SyntaxError",
            Error::Presentation(d) => d.code.as_str(),
            Error::BadField(_) => "BadField",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::DegreeBoundExceeded { .. } => "DegreeBoundExceeded",
            Error::InfiniteDimensional { .. } => "InfiniteDimensional",
            Error::ConsistencyFailure { .. } => "ConsistencyFailure",
            Error::NotNilpotent => "NotNilpotent",
            Error::SocleMismatch { .. } => "SocleMismatch",
            Error::NotSymmetric { .. } => "NotSymmetric",
            Error::Degenerate(_) => "Degenerate",
            Error::InvariantViolation(_) => "InvariantViolation",
            Error::CharacteristicMismatch(..) => "CharacteristicMismatch",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
            Error::BadParameters(_) => "BadParameters",
            Error::Usage(_) => "UsageError",
        }
    }

    /// Internal consistency failures signal a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::InvariantViolation(_) | Error::ConsistencyFailure { .. }
        )
    }
}
