use thiserror::Error;

use crate::bounded::BdViolation;
use crate::grammar::GrammarClass;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left_rows}x{left_cols} times {right_rows}x{right_cols}")]
    DimensionMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },

    #[error("finite arithmetic overflow")]
    Overflow,

    #[error("entry ({row}, {col}) = {value} lies outside [-{bound}, {bound}]")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: i64,
        bound: i64,
    },

    #[error("matrix is not {width}-bounded-difference: {violation}")]
    NotBoundedDifference { width: i64, violation: BdViolation },

    #[error("group {group} varies by {spread} along index {index}, bound is {bound}")]
    GroupVariation {
        group: usize,
        index: usize,
        spread: i64,
        bound: i64,
    },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("line {line}: {message}")]
    Format { line: usize, message: String },

    #[error("unknown symbol {0}")]
    UnknownSymbol(String),

    #[error("grammar is {found:?}, expected {expected}")]
    WrongGrammarClass {
        expected: &'static str,
        found: GrammarClass,
    },

    #[error("search exhausted with stack depth cap {cap}; retry with a larger cap")]
    SearchExhausted { cap: usize },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn format(line: usize, message: impl Into<String>) -> Self {
        Error::Format {
            line,
            message: message.into(),
        }
    }
}
