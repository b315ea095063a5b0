//! Error type shared by every module in the crate.

use thiserror::Error;

/// Everything that can go wrong while building, evaluating, or classifying
/// a metric.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Series division hit a (near-)zero leading coefficient.
    #[error("series division by (near-)zero leading coefficient")]
    DivisionByZeroSeries,

    /// An evaluation point or window fell outside the admissible domain.
    #[error("evaluation point outside the admissible domain: {0}")]
    Domain(String),

    /// An interior Taylor expansion was requested at a zero of a metric
    /// function; the components have a pole there.
    #[error("interior expansion requested at a zero of a metric function")]
    Pole,

    /// A Laurent expansion found a zero that is not simple.
    #[error("zero at the expansion point is not simple")]
    PoleOrder,

    /// A catalog lookup used an id that does not exist.
    #[error("unknown catalog id `{0}`")]
    UnknownId(String),

    /// A constraint-system lookup used an id that does not exist.
    #[error("unknown constraint system `{0}`")]
    UnknownSystem(String),

    /// The metric endomorphism was numerically singular at a sample point.
    #[error("metric endomorphism numerically singular at t = {0}")]
    DegenerateMetric(f64),

    /// A run configuration failed validation.
    #[error("configuration error: {0}")]
    Config(String),

    /// A metric function vanishes identically on the test interval.
    #[error("degenerate ansatz: a metric function vanishes identically on the test interval")]
    DegenerateAnsatz,

    /// A textual metric-function expression could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
