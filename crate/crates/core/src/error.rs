use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension must be positive")]
    ZeroDimension,

    #[error("linear map is singular")]
    SingularMap,

    #[error("subspace is not an ideal")]
    NotAnIdeal,

    #[error("unknown catalog id `{0}`")]
    UnknownId(String),

    #[error("parameter `{param}` = {value} violates constraint `{constraint}` of {id}")]
    ConstraintViolated {
        id: String,
        param: String,
        constraint: String,
        value: String,
    },

    #[error("missing value for parameter `{param}` of {id}")]
    MissingParam { id: String, param: String },

    #[error("{id} has no parameter `{param}`")]
    UnknownParam { id: String, param: String },

    #[error("{base} has no automorphism family {which}")]
    UnknownAutomorphism { base: String, which: usize },

    #[error("automorphism family {which} of {base} failed its check: {detail}")]
    NotAutomorphism {
        base: String,
        which: usize,
        detail: String,
    },

    #[error("precondition failed: {0}")]
    PrereqFailed(String),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error("unknown probe case `{0}`")]
    UnknownCase(String),

    #[error("cannot parse `{token}`: {reason}")]
    Parse { token: String, reason: String },

    #[error("catalog line {line}: {reason}")]
    Catalog { line: usize, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn parse(token: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Parse {
            token: token.into(),
            reason: reason.into(),
        }
    }
}
