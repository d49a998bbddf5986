use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by a series with no nonzero known coefficient")]
    DivisionByZero,

    #[error("exponent underflow: dividend has a nonzero coefficient at x^{index} below the divisor valuation {valuation}")]
    ExponentUnderflow { index: usize, valuation: usize },

    #[error("inner series of a composition must have zero constant term")]
    NonzeroConstantTerm,

    #[error("reversion needs a series of the form x + O(x^2): {0}")]
    NotRevertible(String),

    #[error("exp needs a zero constant term")]
    ExpDomain,

    #[error("log needs constant term 1")]
    LogDomain,

    #[error("series is not invertible (zero constant term)")]
    NotInvertible,

    #[error("log-series degree {0} exceeds the supported maximum of 3")]
    LogDegreeOverflow(usize),

    #[error("operator has rank {found}, expected {expected}")]
    WrongRank { expected: usize, found: usize },

    #[error("point 0 is not maximally unipotent: indicial polynomial {polynomial}, roots {roots}")]
    NotMaximallyUnipotent { polynomial: String, roots: String },

    #[error("recursion leading coefficient vanishes at n = {0}")]
    SingularRecursion(i64),

    #[error("recursion forcing sequence too short: needs index {needed}, has {available}")]
    ForcingTooShort { needed: usize, available: usize },

    #[error("two independent routes disagree: {0}")]
    RouteMismatch(String),

    #[error("invariant violated: {0}")]
    InvariantViolated(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
