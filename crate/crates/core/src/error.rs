use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("total degree {degree} exceeds limit {limit}")]
    DegreeOverflow { degree: u32, limit: u32 },
    #[error("schema error at {pointer}: {msg}")]
    Schema { pointer: String, msg: String },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("invalid structure: {0}")]
    InvalidStructure(String),
    #[error("form is not alternating: {0}")]
    NotAlternating(String),
    #[error("degree error: {0}")]
    DegreeError(String),
    #[error("degenerate: {0}")]
    Degenerate(String),
    #[error("S-equation fails at {witness}: residual {residual}")]
    SEquationFailed { witness: String, residual: String },
    #[error("form is not a 2-cocycle: {0}")]
    NotCocycle(String),
    #[error("rank deficient: {0}")]
    RankDeficient(String),
    #[error("connection is not flat: {0}")]
    NotFlat(String),
    #[error("connection has torsion: {0}")]
    NotTorsionFree(String),
    #[error("metric is not pseudo-Hessian: {0}")]
    NotHessian(String),
}

pub type Result<T> = std::result::Result<T, Error>;
