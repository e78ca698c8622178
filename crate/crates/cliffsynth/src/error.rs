use thiserror::Error;

/// Error type shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not symplectic")]
    NotSymplectic,
    #[error("phase vector is not realizable for the target symplectic matrix")]
    InvalidPhaseVector,
    #[error("stabilizer generators do not pairwise commute")]
    NonCommuting,
    #[error("stabilizer generators are linearly dependent")]
    DependentGenerators,
    #[error("sign-correction system has no solution")]
    NoSolution,
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid circuit: {0}")]
    InvalidCircuit(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
}

impl Error {
    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
