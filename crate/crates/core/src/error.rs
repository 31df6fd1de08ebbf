use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid piecewise data: {0}")]
    InvalidData(String),

    #[error("function is not non-decreasing: {0}")]
    NotMonotone(String),

    #[error("norm is infinite: {0}")]
    InfiniteNorm(String),

    #[error("density is not integrable: {0}")]
    NotIntegrable(String),

    #[error("inconsistent energy data: {0}")]
    InconsistentData(String),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("invalid relabelling: {0}")]
    InvalidRelabelling(String),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("time {t} is outside [0, {horizon}]")]
    TimeOutOfRange { t: f64, horizon: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unknown example id `{0}`")]
    UnknownExample(String),

    #[error("unknown solver `{0}`")]
    UnknownSolver(String),

    #[error("query outside tabulated coverage: {0}")]
    OutOfCoverage(String),

    #[error("states are not comparable: {0}")]
    IncompatibleStates(String),

    #[error("total energy {mass} exceeds the bound {bound}")]
    MassBound { mass: f64, bound: f64 },
}
