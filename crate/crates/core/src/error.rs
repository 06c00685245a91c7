use thiserror::Error;

/// Errors produced by the toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite value {0} cannot be scaled")]
    NonFinite(f64),

    #[error("log10 value {0} is outside the representable exponent range")]
    OutOfRange(f64),

    #[error("negative value {0} cannot be represented as a scaled decimal")]
    Negative(String),

    #[error("malformed decimal literal {0:?}")]
    Parse(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("alphabet must contain at least one symbol")]
    EmptyAlphabet,

    #[error("alphabet contains duplicate symbol {0:?}")]
    DuplicateSymbol(char),

    #[error("target text must contain at least one character")]
    EmptyTarget,

    #[error("character {ch:?} at position {position} of the target is not in the alphabet")]
    OutOfAlphabet { ch: char, position: usize },

    #[error("prefix length {requested} exceeds target length {available}")]
    PrefixTooLong { requested: usize, available: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("need at least 2 values to estimate a growth factor, got {0}")]
    TooFewValues(usize),

    #[error("value {value} at index {index} must be positive")]
    NonPositive { index: usize, value: f64 },

    #[error("{name} must be positive, got {value}")]
    InvalidConstant { name: &'static str, value: f64 },

    #[error("malformed measurement data: {0}")]
    Data(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
