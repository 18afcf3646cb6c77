use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("weight matrix needs at least 4 columns, got {0}")]
    TooFewColumns(usize),

    #[error("rows have different lengths ({top} vs {bottom})")]
    RowLengthMismatch { top: usize, bottom: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("column {0} is the zero vector")]
    ZeroColumn(usize),

    #[error("columns do not lie in a strictly convex cone")]
    NotStrictlyConvex,

    #[error("all columns are parallel")]
    AllColumnsParallel,

    #[error("matrix is not in standard form: {0}")]
    NotStandard(&'static str),

    #[error("matrix fails validation: {0}")]
    Invalid(String),

    #[error("ray {0} is not primitive")]
    ImprimitiveRay(usize),

    #[error("rays {0} and {1} coincide")]
    RepeatedRay(usize, usize),

    #[error("rays do not span the ambient lattice")]
    RaysDoNotSpan,

    #[error("cone {0:?} has zero determinant")]
    DegenerateCone(Vec<usize>),

    #[error("no maximal cones found")]
    EmptyFan,

    #[error("polytope enumeration refused in dimension {0} (limit 4)")]
    DimensionTooLarge(usize),

    #[error("weights {0:?} are not well-formed")]
    NotWellFormedWeights(Vec<i64>),

    #[error("balance equation: {0}")]
    NoRoot(String),

    #[error("infeasible request: {0}")]
    Infeasible(String),

    #[error("oracles disagree: {0}")]
    OracleDisagreement(String),

    #[error("classifier unavailable: {0}")]
    ClassifierUnavailable(String),

    #[error("classifier protocol: {0}")]
    ClassifierProtocol(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
