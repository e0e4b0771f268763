use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("not a canonical rational: {0:?}")]
    NonCanonical(String),
    #[error("cannot parse rational: {0:?}")]
    Parse(String),
    #[error("cyclotomic field mismatch: order {left} vs order {right}")]
    FieldMismatch { left: u64, right: u64 },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("unsupported power l = {0}; only l = 1 and l = 2 are supported")]
    UnsupportedPower(u32),
    /// A quantity that must be rational by theory came out irrational. This
    /// always indicates a bug, never bad input.
    #[error("internal consistency error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
