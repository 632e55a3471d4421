use thiserror::Error;

/// Errors raised by the exact-arithmetic layer and the constructions built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    /// Degree or valuation was requested for the zero polynomial.
    #[error("{0} is undefined for the zero polynomial")]
    ZeroPolynomial(&'static str),

    /// A parameter value hits a zero of a denominator in a closed-form formula.
    #[error("parameter pole: {0} vanishes")]
    Pole(String),

    #[error("representation error: {0}")]
    Representation(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// Two independent constructions of the same object disagree.
    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("series did not reach tolerance {tolerance} within {budget} terms")]
    Convergence { tolerance: String, budget: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
