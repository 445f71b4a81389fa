use thiserror::Error;

/// Errors raised by lattice computations.
///
/// Budget exhaustion in searches is usually reported as a verdict value
/// rather than through this type; `BudgetExceeded` is only used where an
/// operation has no meaningful partial answer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("linear system has no integer solution")]
    NoSolution,
    #[error("matrix is singular")]
    Singular,
    #[error("gram matrix is not symmetric")]
    NotSymmetric,
    #[error("lattice is not even: {0}")]
    NotEven(String),
    #[error("lattice is degenerate")]
    Degenerate,
    #[error("rescaling factor must be nonzero")]
    ZeroScale,
    #[error("glue is not integral: {0}")]
    NotIntegral(String),
    #[error("basis rows are linearly dependent")]
    DependentBasis,
    #[error("lattice is not definite")]
    NotDefinite,
    #[error("search budget exceeded after {0} nodes")]
    BudgetExceeded(u64),
    #[error("unknown lattice name '{0}'")]
    UnknownName(String),
    #[error("invalid Todorov data: {0}")]
    InvalidSpec(String),
    #[error("glue vector mu rejected: {0}")]
    GlueRejected(String),
    #[error("signature obstruction: {0}")]
    SignatureObstruction(String),
    #[error("self-intersection {0} is odd")]
    OddSelfIntersection(i64),
    #[error("invalid polarization degree {0}")]
    InvalidDegree(i64),
    #[error("inconsistent input: {0}")]
    InconsistentInput(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
