use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("possibility space must contain at least one world")]
    EmptySpace,
    #[error("duplicate world name `{0}`")]
    DuplicateWorld(String),
    #[error("unknown world `{0}`")]
    UnknownWorld(String),
    #[error("operands live on different possibility spaces")]
    SpaceMismatch,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("membership of the zero gamble is the coherence question; use zero_in_posi / is_coherent_extension")]
    ZeroGambleQuery,
    #[error("event must be non-empty")]
    EmptyEvent,
    #[error("the top element L(Ω) is not a coherent set")]
    TopNotCoherent,
    #[error("assertions are not coherent (0 lies in their natural extension)")]
    Incoherent,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("unknown set `{0}`")]
    UnknownSet(String),
    #[error("unknown event `{0}`")]
    UnknownEvent(String),
    #[error("unknown question `{0}`")]
    UnknownQuestion(String),
    #[error("at least {min} partitions are required, got {found}")]
    TooFewPartitions { min: usize, found: usize },
    #[error("size limit {requested} exceeds the maximum {max} for {what}")]
    LimitExceeded {
        what: &'static str,
        requested: usize,
        max: usize,
    },
    #[error("gamble is not a member of the target set")]
    NotInTarget,
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation error at `{path}`: {message}")]
    Validation { path: String, message: String },
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn validation(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Validation {
            path: path.into(),
            message: message.into(),
        }
    }
}
