use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid word: {0}")]
    InvalidWord(String),

    #[error("invalid spacing set: {0}")]
    InvalidSet(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("too large to materialize: {0}")]
    TooLarge(String),

    /// A construction was asked for more than can be computed.
    #[error("infeasible: {what} is {value}, limit is {limit}")]
    Infeasible { what: &'static str, value: String, limit: String },

    #[error("stage {stage} cannot be built: {source}")]
    StageInfeasible { stage: usize, source: Box<Error> },

    /// A construction produced output violating one of its own guarantees.
    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("certificate rejected: {0}")]
    Rejected(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
