use thiserror::Error;

/// Errors raised by every fallible operation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("coefficient rings differ: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("groups differ")]
    GroupMismatch,
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("invalid group table: {0}")]
    InvalidGroup(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("invalid homomorphism: {0}")]
    InvalidHom(String),
    #[error("maps are not composable: {0}")]
    NotComposable(String),
    #[error("composite of differentials is not zero")]
    NonZeroComposite,
    #[error("unsupported regime: {0}")]
    Unsupported(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("integer entry exceeds the {limit}-bit cap ({bits} bits)")]
    EntryTooLarge { bits: u64, limit: u64 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
