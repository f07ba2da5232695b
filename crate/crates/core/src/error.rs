use crate::linalg::LinalgError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("presentation not admissible at bound {bound}: path {path} is not in the ideal")]
    NotAdmissible { bound: usize, path: String },
    #[error("relation {index} is not homogeneous: {detail}")]
    NonHomogeneous { index: usize, detail: String },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("objects live over different algebras")]
    AlgebraMismatch,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    /// A proven statement failed on concrete data; this signals a bug in a
    /// convention or an implementation, never a property of the input.
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
    #[error("input error at {pointer}: {message}")]
    Input { pointer: String, message: String },
}

impl Error {
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::TheoremViolation(_) => 3,
            _ => 2,
        }
    }

    pub(crate) fn input(pointer: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Input { pointer: pointer.into(), message: message.into() }
    }
}
