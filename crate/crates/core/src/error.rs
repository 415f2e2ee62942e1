use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("measure lives on space `{found}` but `{expected}` was required")]
    SpaceMismatch { expected: String, found: String },
    #[error("coordinate kind does not match the ground space: {0}")]
    CoordKind(String),
    #[error("kernel evaluation failed: {0}")]
    KernelError(String),
    #[error("kernel support of ({x}, {y}) leaves the grid [0, {x_max}]")]
    GridOverflow { x: f64, y: f64, x_max: f64 },
    #[error("position {0} is not within half a step of any grid node")]
    OffGrid(f64),
    #[error("tolerance must be positive, got {0}")]
    BadTolerance(f64),
    #[error("semicharacter is not positive: {0}")]
    NotPositive(String),
    #[error("semicharacter not certified for `{hypergroup}`: defect {defect:e} exceeds {tolerance:e}")]
    UncertifiedSemicharacter { hypergroup: String, defect: f64, tolerance: f64 },
    #[error("measure has a negative weight at {0}")]
    NotPositiveMeasure(String),
    #[error("zero measure has no normalization")]
    ZeroMeasure,
    #[error("double coset convolution is not commutative at ({x}, {y}): defect {defect:e}")]
    NonCommutative { x: usize, y: usize, defect: f64 },
    #[error("invalid group data: {0}")]
    InvalidGroup(String),
    #[error("invalid Sturm-Liouville profile: {0}")]
    BadProfile(String),
    #[error("Sturm-Liouville solution lost positivity at x = {x}")]
    SolverDefect { x: f64 },
    #[error("log-derivative probes do not converge: {0}")]
    NoLimit(String),
    #[error("test function must vanish at the identity")]
    BadTestFunction,
    #[error("every basis row leaks more than {tolerance:e} outside the basis")]
    TruncationError { tolerance: f64 },
    #[error("dimension mismatch: {0}")]
    DimensionError(String),
    #[error("pair ({index}) violates |x - y| <= 1: distance {distance}")]
    BadPair { index: usize, distance: f64 },
    #[error("rank {d} is outside the admissible range for family {family}")]
    BadRank { family: String, d: usize },
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn space_mismatch(expected: &impl ToString, found: &impl ToString) -> Self {
        Error::SpaceMismatch { expected: expected.to_string(), found: found.to_string() }
    }
}
