use thiserror::Error;

#[derive(Debug, Error)]
pub enum AlgError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid field: {0}")]
    BadField(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("mismatched algebras: {0}")]
    Mismatch(String),
    #[error("algebra is not quadratic (witness {witness})")]
    NotQuadratic { witness: String },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("operation requires a prime field")]
    WrongField,
    #[error("search exhausted: {0}")]
    SearchExhausted(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}
