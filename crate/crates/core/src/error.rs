use alloc::string::String;

/// Errors raised by the kernels when a documented precondition is violated.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("operation is undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("modulus {0} must be an odd prime")]
    BadModulus(u64),
    #[error("{m} does not divide p - 1 = {pm1}")]
    NotDivisor { m: u64, pm1: u64 },
    #[error("value is not invertible modulo {p}")]
    NotInvertible { p: u64 },
    #[error("discriminant is zero (repeated root)")]
    ZeroDiscriminant,
    #[error("generating set is not closed under inversion")]
    NotSymmetric,
    #[error("set generates a subgroup of order {found}, not the whole group of order {order}")]
    NotGenerating { found: u64, order: u64 },
    #[error("state space of {states} elements exceeds the cap of {cap}")]
    CapExceeded { states: u64, cap: u64 },
    #[error("degenerate distribution: {0}")]
    Degenerate(String),
    #[error("invalid model configuration: {0}")]
    InvalidConfig(String),
    #[error("size guard: {0}")]
    TooLarge(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = core::result::Result<T, Error>;
