use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A type string such as `"A3"` or `"F4xG2"` could not be parsed, or
    /// names an unsupported rank.
    #[error("invalid type specification: {0}")]
    InvalidType(String),

    /// An explicit Cartan matrix failed validation.
    #[error("invalid Cartan matrix: {0}")]
    InvalidCartan(String),

    /// Root generation exceeded its termination bound, which for a
    /// generalized Cartan matrix with valid sign pattern means the type
    /// is not finite.
    #[error("root system is not of finite type (generation exceeded {bound} roots)")]
    InfiniteType { bound: usize },

    /// A group enumeration would exceed the configured size bound.
    #[error("group enumeration exceeds the size bound {bound}")]
    SizeBound { bound: usize },

    /// Inputs belong to different root data / groups, or have the wrong
    /// dimension.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// A basis conversion or truncated computation left the configured
    /// finite window.
    #[error("computation left the configured window: {0}")]
    WindowExceeded(String),

    /// Malformed serialized input.
    #[error("parse error: {0}")]
    Parse(String),

    /// An argument violated a documented precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
