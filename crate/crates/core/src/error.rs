use thiserror::Error;

/// Failures reported by the kernel.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("zero element where a nonzero homogeneous element is required")]
    ZeroElement,

    #[error("unit (degree-0) element where a non-unit is required")]
    UnitElement,

    #[error("degree {requested} exceeds the configured cap {cap}")]
    DegreeCap { requested: usize, cap: usize },

    #[error("{what} out of range: {value}")]
    OutOfRange { what: &'static str, value: i64 },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("scalars from different fields cannot be combined")]
    FieldMismatch,

    #[error("characteristic {characteristic} is too small for degree {degree}")]
    Characteristic { characteristic: u64, degree: usize },

    #[error("ill-graded matrix: {0}")]
    IllGraded(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("unknown generator `{name}` at position {pos}")]
    UnknownGenerator { name: String, pos: usize },

    #[error("non-homogeneous expression: mixed degrees {first} and {second}")]
    NonHomogeneous { first: usize, second: usize },

    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for the errors that stem from a resource bound rather than bad input.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::DegreeCap { .. })
    }

    pub fn is_parse(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. } | Error::UnknownGenerator { .. } | Error::NonHomogeneous { .. }
        )
    }
}
