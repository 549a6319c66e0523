use thiserror::Error;

/// Errors raised by group computations and the section pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: expected {expected}, got {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("image list is not a bijection on 0..{degree}")]
    NotBijective { degree: usize },

    #[error("{what} cap exceeded: {size} > {cap}")]
    CapExceeded { what: &'static str, size: u64, cap: u64 },

    #[error("element is not a member of the group")]
    NotAMember,

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("generator images do not define a homomorphism")]
    NotHomomorphism,

    #[error("invalid metacyclic parameters: {0}")]
    InvalidSpec(String),

    #[error("invalid section configuration: {0}")]
    InvalidConfig(String),

    #[error("target structure check failed: {0}")]
    TargetStructure(String),

    #[error("pipeline invariant violated in {stage}: {detail}")]
    Internal { stage: &'static str, detail: String },

    #[error("replay mismatch in {stage}: {detail}")]
    Replay { stage: &'static str, detail: String },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn internal(stage: &'static str, detail: impl Into<String>) -> Self {
        Error::Internal {
            stage,
            detail: detail.into(),
        }
    }

    pub(crate) fn cap(what: &'static str, size: u64, cap: u64) -> Self {
        Error::CapExceeded { what, size, cap }
    }
}
