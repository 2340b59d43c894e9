use thiserror::Error;

/// Errors raised by the algebraic engines and the network front end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    MalformedInput(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("division by zero: {0}")]
    DivisionByZero(String),

    #[error("well-posedness violated: {0}")]
    WellPosedness(String),

    #[error(
        "resource budget exhausted after {steps} reduction steps \
         (basis size {basis_len}, {pending_pairs} pairs pending)"
    )]
    ResourceExhausted {
        steps: u64,
        basis_len: usize,
        pending_pairs: usize,
    },

    #[error("invalid network description: {}", .0.join("; "))]
    Validation(Vec<String>),

    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("degenerate structure: {0}")]
    DegenerateStructure(String),

    #[error("internal inconsistency: {0}")]
    Inconsistency(String),

    #[error("empty parameter variety: {0}")]
    EmptyVariety(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
