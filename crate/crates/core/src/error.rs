use thiserror::Error;

/// Errors produced anywhere in the evidence pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("singular matrix: {0}")]
    Singular(String),

    #[error("optimizer did not converge: {0}")]
    NonConvergence(String),

    #[error("empty null set: {0}")]
    EmptySet(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("undefined codimension: {0}")]
    UndefinedCodimension(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Process exit code used by the command-line front end:
    /// 2 for usage/config problems, 3 for numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NonConvergence(_) | Error::Singular(_) => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
