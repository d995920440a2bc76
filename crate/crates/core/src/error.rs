use thiserror::Error;

/// Errors raised by the library.
///
/// `Consistency` is reserved for failed internal cross-checks (inexact
/// division, disagreeing routes); everything else is a usage error.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unsupported root system: {0}")]
    UnsupportedType(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("element does not belong to this group: {0}")]
    ForeignElement(String),

    #[error("invalid generator index {index} (group has {count} affine simple reflections)")]
    BadGenerator { index: usize, count: usize },

    #[error("element is not of length zero")]
    NotInOmega,

    #[error("parabolic subgroup is not of finite type (more than {cap} elements)")]
    NotFiniteType { cap: usize },

    #[error("length-zero components do not match")]
    OmegaMismatch,

    #[error("enumeration limit exceeded: {0}")]
    LimitExceeded(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

impl Error {
    /// True for failures that indicate a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Consistency(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
