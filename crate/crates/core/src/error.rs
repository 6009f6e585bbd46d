use thiserror::Error;

use crate::dimension::Dimension;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("Overflow: {0} produced a non-finite value")]
    Overflow(&'static str),

    #[error("DivisionByZero: divisor is zero")]
    DivisionByZero,

    #[error("DimensionMismatch: [{left}] vs [{right}]")]
    DimensionMismatch { left: Dimension, right: Dimension },

    #[error("DomainError: {0}")]
    Domain(String),

    #[error("LexError at {line}:{column}: unexpected character {found:?}")]
    Lex {
        line: usize,
        column: usize,
        found: char,
    },

    #[error("ParseError at {line}:{column}: expected {expected}, found {found}")]
    Parse {
        line: usize,
        column: usize,
        expected: String,
        found: String,
    },

    #[error("UnknownIdentifier: `{0}`")]
    UnknownIdentifier(String),

    /// An error raised while evaluating or typing a subexpression.
    #[error("{source} (in `{expr}`)")]
    InExpr { expr: String, source: Box<Error> },

    #[error("ParseError in [relation {section}] at line {line}: {message}")]
    Corpus {
        section: String,
        line: usize,
        message: String,
    },

    #[error("DuplicateId: relation `{id}` defined again at line {line}")]
    DuplicateId { id: String, line: usize },

    #[error("constants error at {source_name}:{line}: {message}")]
    Constants {
        source_name: String,
        line: usize,
        message: String,
    },

    #[error("NegativeTime: t = {0} s")]
    NegativeTime(f64),

    #[error("InvalidSteps: need at least 2 steps, got {0}")]
    InvalidSteps(usize),

    #[error("EmptySeries: no epoch states to check")]
    EmptySeries,

    #[error("UnsupportedDimension: {0} (expected 1, 2 or 3)")]
    UnsupportedDimension(i64),

    #[error("InsufficientSamples: need at least 3 samples, got {0}")]
    InsufficientSamples(usize),
}

impl Error {
    /// Strips `InExpr` wrappers down to the originating error.
    pub fn root(&self) -> &Error {
        match self {
            Error::InExpr { source, .. } => source.root(),
            other => other,
        }
    }

    pub fn is_dimension_mismatch(&self) -> bool {
        matches!(self.root(), Error::DimensionMismatch { .. })
    }
}
