use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown Lie type `{0}` (expected e.g. A3, D6, E8, F4, G2)")]
    UnknownType(String),

    #[error("inadmissible rank for type {family}{rank}: {constraint}")]
    InadmissibleRank {
        family: char,
        rank: usize,
        constraint: &'static str,
    },

    #[error("node {node} out of range 1..={rank}")]
    NodeOutOfRange { node: usize, rank: usize },

    #[error("substitution q -> q^0 is not a ring automorphism")]
    ZeroSubstitution,

    #[error("gcd of two zero polynomials is undefined")]
    GcdOfZeros,

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("inexact division: {0}")]
    InexactDivision(String),

    #[error("singular matrix: pivot vanished in column {column} (pivot chain: {chain})")]
    SingularMatrix { column: usize, chain: String },

    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },

    #[error("divisor periods differ: {left} vs {right}")]
    PeriodMismatch { left: usize, right: usize },

    #[error("Lie types differ: {left} vs {right}")]
    TypeMismatch { left: String, right: String },

    #[error("product search supports 1 to 3 factors, got {0}")]
    FactorCount(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("integer {0} does not fit in 64 bits")]
    Overflow(String),

    #[error("cache: {0}")]
    Cache(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
