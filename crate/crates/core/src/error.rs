use crate::rational::ParseRationalError;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("space must have at least one point")]
    EmptySpace,
    #[error("distance matrix is not square (row {row} has {len} entries, expected {expected})")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("{labels} labels given for a {rows}-point matrix")]
    LabelMismatch { labels: usize, rows: usize },
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("nonzero diagonal entry at point {0}")]
    DiagonalNonzero(usize),
    #[error("asymmetric matrix: d({0},{1}) != d({1},{0})")]
    AsymmetricMatrix(usize, usize),
    #[error("negative distance d({0},{1})")]
    NegativeDistance(usize, usize),
    #[error("zero distance between distinct points {0} and {1}")]
    ZeroOffDiagonal(usize, usize),
    #[error("triangle inequality fails: d({0},{2}) > d({0},{1}) + d({1},{2})")]
    TriangleViolation(usize, usize, usize),
    #[error("space is not ultrametric")]
    NotUltrametric,
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Rational(#[from] ParseRationalError),
    #[error("unknown builtin space `{0}`")]
    UnknownBuiltin(String),
    #[error("distance oracle violates the metric axioms: {0}")]
    OracleViolation(String),
    #[error("q must lie strictly between 0 and 1")]
    QOutOfRange,
    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },
    #[error("the two points must be distinct")]
    SamePoint,
    #[error("space has a single point")]
    SinglePoint,
    #[error("operands live on different spaces")]
    SpaceMismatch,
    #[error("function value at the base point must be zero")]
    BaseValueNonzero,
    #[error("function is identically zero")]
    ZeroFunction,
    #[error("unknown point label `{0}`")]
    UnknownPoint(String),
    #[error("element is supported outside the truncation")]
    SupportOutsideTruncation,
    #[error("invalid ball chain: {0}")]
    InvalidChain(String),
    #[error("witness conditions fail: {0}")]
    WitnessConditionsFail(String),
    #[error("subspace basis is linearly dependent")]
    DegenerateBasis,
    #[error("projection is not idempotent")]
    NotIdempotent,
    #[error("function {index} is not flat enough: profile {profile} exceeds {eps}")]
    FlatnessViolation { index: usize, profile: String, eps: String },
    #[error("standing assumption fails: {0}")]
    StandingAssumption(String),
    #[error("function does not have norm one")]
    NotUnitNorm,
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("linear program: {0}")]
    Lp(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
