use thiserror::Error;

use crate::geometry::Violation;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivideByZero,

    #[error("affine map is singular")]
    SingularMap,

    #[error("triangle is degenerate (zero area)")]
    DegenerateTriangle,

    #[error("triangle vertices are listed clockwise")]
    ClockwiseTriangle,

    #[error("Jacobi/weight parameter must exceed -1, got {0}")]
    ParameterOutOfRange(String),

    #[error("base index must be in 1..=6, got {0}")]
    BadBaseIndex(usize),

    #[error("Proriol normalizer vanished for (n, k) = ({n}, {k})")]
    ZeroNormalizer { n: usize, k: usize },

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("polynomial not divisible by y: {0}")]
    NotDivisible(String),

    #[error("degree {0} not supported here: {1}")]
    InvalidDegree(usize, &'static str),

    #[error("triangles do not share exactly one edge")]
    NoSharedEdge,

    #[error("degenerate configuration: {0}")]
    DegenerateConfiguration(String),

    #[error("invalid triangle patch: {0:?}")]
    InvalidPatch(Vec<Violation>),

    #[error("patch parameters are inconsistent: {0}")]
    InconsistentParams(String),

    #[error("patch family is empty: {0}")]
    EmptyFamily(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("I/O error: {0}")]
    Io(String),

    #[error("matrix is not positive definite")]
    NotPositiveDefinite,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
