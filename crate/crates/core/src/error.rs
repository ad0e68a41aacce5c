use thiserror::Error;

/// Errors raised by the algebraic layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("operands live in different cyclotomic fields (n = {0} and n = {1})")]
    FieldMismatch(usize, usize),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different algebras")]
    AlgebraMismatch,
    #[error("element is not invertible")]
    NotInvertible,
    #[error("element is not homogeneous")]
    NotHomogeneous,
    #[error("invalid order n = {0}: {1}")]
    InvalidOrder(usize, &'static str),
    #[error("index {index} out of range {lo}..={hi}")]
    OutOfRange { index: i64, lo: i64, hi: i64 },
    #[error("expected an element of degree {expected}, got degree {found}")]
    WrongDegree { expected: usize, found: usize },
    #[error("malformed algebra data: {0}")]
    Malformed(String),
    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, AlgebraError>;
