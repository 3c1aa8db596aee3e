use thiserror::Error;

/// Errors raised by the factorization library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operation counter is not enabled on this field")]
    CounterDisabled,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("modulus {0} is out of range (must be below 2^31)")]
    ModulusOutOfRange(u64),
    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("triangular matrix has a zero diagonal entry at {0}")]
    SingularDiagonal(usize),
    #[error("zero pivot at index {0}")]
    ZeroPivot(usize),
    #[error("singular 2x2 pivot on ({0}, {1})")]
    SingularPivot(usize, usize),
    #[error("inertia requires an ordered field")]
    UnorderedField,
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
    #[error("partial LDL residual is nonzero outside the trailing block at ({row}, {col})")]
    ResidualLeakage { row: usize, col: usize },
    #[error("skeleton conversion requires a nonzero b11")]
    ZeroB11,
    #[error("target row is not in the span of the basis rows")]
    NotInSpan,
    #[error("right-hand side is not in the range of the factor")]
    InconsistentSystem,
    #[error("invalid tree decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("entry '{token}' on line {line} is not an element of the selected field")]
    EntryOutOfField { line: usize, token: String },
    #[error("{0}")]
    Usage(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
