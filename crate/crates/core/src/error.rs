use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus is not a monic irreducible polynomial of the requested degree")]
    ReducibleModulus,
    #[error("field of size {0} exceeds the desk-scale bound 2^20")]
    FieldTooLarge(u128),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different fields")]
    ContextMismatch,
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("precision exhausted: {0}")]
    Precision(String),
    #[error("singular point: {0}")]
    Singular(String),
    #[error("out of scope: {0}")]
    OutOfScope(String),
    #[error("enumeration bound exceeded: {0}")]
    Bound(String),
    #[error("not convenient: {0}")]
    NotConvenient(String),
}

impl Error {
    /// True for inputs the library deliberately does not handle (singular
    /// points, oversize enumerations), as opposed to malformed input.
    pub fn is_out_of_scope(&self) -> bool {
        matches!(
            self,
            Error::Singular(_) | Error::OutOfScope(_) | Error::Bound(_) | Error::FieldTooLarge(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
