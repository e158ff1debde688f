use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_MISMATCH: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    /// Unreadable or malformed input.
    #[error("{0}")]
    Input(String),

    /// Well-formed input that violates a precondition (BD width, grammar
    /// class, dimensions).
    #[error("{0}")]
    Precondition(String),

    /// An oracle disagreed with the fast path. Always a bug.
    #[error("oracle mismatch: {0}")]
    Mismatch(String),

    #[error(transparent)]
    Core(#[from] bdmp::error::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use bdmp::error::Error as E;
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Precondition(_) => EXIT_PRECONDITION,
            CliError::Mismatch(_) => EXIT_MISMATCH,
            CliError::Core(E::Format { .. } | E::UnknownSymbol(_)) => EXIT_INPUT,
            CliError::Core(E::Internal(_)) => EXIT_MISMATCH,
            CliError::Core(_) => EXIT_PRECONDITION,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
