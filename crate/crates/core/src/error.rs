use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid quadrature configuration: {0}")]
    InvalidConfig(String),
    #[error("integrand returned {value} at x = {x}")]
    NonFinite { x: f64, value: f64 },
    #[error(
        "quadrature did not converge after {refinements} refinements (last change {estimate:e})"
    )]
    NoConvergence { refinements: u32, estimate: f64 },
    #[error("point {point} outside domain: {context}")]
    Domain { point: f64, context: &'static str },
    #[error("invalid bracket [{lo}, {hi}]")]
    InvalidBracket { lo: f64, hi: f64 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("singular system: pivot vanished at row {row}")]
    Singular { row: usize },
    #[error("weights m1 = {m1} and m2 = {m2} must be coprime positive integers")]
    NotCoprime { m1: u64, m2: u64 },
    #[error("grid of {grid} cells too coarse: {reason}")]
    GridTooCoarse { grid: usize, reason: String },
    #[error("one-sided limit did not converge (spread {spread:e})")]
    LimitNotConverged { spread: f64 },
    #[error("invalid profile: {0}")]
    InvalidProfile(String),
    #[error("invalid metric data: {0}")]
    InvalidMetric(String),
    #[error("functional routes disagree: {first} vs {second}")]
    InconsistentRoutes { first: f64, second: f64 },
    #[error("conformal factor must be positive (found {value} at s = {at})")]
    NonPositiveU { value: f64, at: f64 },
    #[error(
        "curvature form vanishes while chi > 0: the functional is unbounded in the fibre length"
    )]
    CaseII,
    #[error("chi = {chi} <= 0: no interior maximum in the fibre length")]
    CaseIII { chi: f64 },
    #[error("invalid case: {0}")]
    InvalidCase(String),
    #[error("right-hand side has mean {mean:e} (scale {scale:e}); the equation is not solvable")]
    NotMeanZero { mean: f64, scale: f64 },
    #[error("uniformization needs chi > 0 (got {0})")]
    ChiNotPositive(f64),
    #[error("collapse bounds need chi <= 0 (got {0})")]
    ChiPositive(f64),
    #[error("degenerate data: {0}")]
    DegenerateData(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// True for errors that signal a model of the wrong topological case
    /// rather than bad input or a numerical failure.
    pub fn is_case_mismatch(&self) -> bool {
        matches!(
            self,
            Error::CaseII
                | Error::CaseIII { .. }
                | Error::InvalidCase(_)
                | Error::ChiNotPositive(_)
                | Error::ChiPositive(_)
        )
    }

    /// True for failures of a numerical procedure on otherwise valid input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NonFinite { .. }
                | Error::NoConvergence { .. }
                | Error::Singular { .. }
                | Error::LimitNotConverged { .. }
                | Error::InconsistentRoutes { .. }
                | Error::GridTooCoarse { .. }
                | Error::NotMeanZero { .. }
        )
    }
}
