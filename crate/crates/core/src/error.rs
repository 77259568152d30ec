use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid model: {0}")]
    Validation(String),

    #[error("infeasible model: {0}")]
    InfeasibleModel(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("MPS parse error at line {line}: {message}")]
    Mps { line: usize, message: String },

    #[error("unsupported feature: {0}")]
    Unsupported(String),

    #[error("instance size out of range: {0}")]
    SizeOutOfRange(String),

    #[error("I/O error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
