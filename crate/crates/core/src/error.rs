use thiserror::Error;

/// Errors produced anywhere in the pipeline.
///
/// Each variant maps onto one of the CLI exit codes through [`Error::exit_code`].
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("group order exceeds the cap of {cap} elements")]
    SizeLimit { cap: usize },

    #[error("subgroups belong to different parent groups")]
    ParentMismatch,

    #[error("representation failed validation: {0}")]
    Validation(String),

    #[error("numeric consistency check failed: {0}")]
    NumericConsistency(String),

    #[error("search horizon of {horizon} blocks exhausted; last failing witness: {detail}")]
    SearchLimit { horizon: usize, detail: String },

    #[error("argument outside the verified domain: {0}")]
    Domain(String),

    #[error("malformed join point: {0}")]
    MalformedJoin(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code for this error: 2 for bad input, 3 for size or search
    /// limits, 4 for numeric inconsistencies, 5 for verification failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidPermutation(_)
            | Error::Validation(_)
            | Error::Config(_)
            | Error::Json(_)
            | Error::Io(_)
            | Error::ParentMismatch
            | Error::Domain(_)
            | Error::MalformedJoin(_) => 2,
            Error::SizeLimit { .. } | Error::SearchLimit { .. } => 3,
            Error::NumericConsistency(_) => 4,
            Error::Verification(_) => 5,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
