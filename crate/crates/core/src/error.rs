use thiserror::Error;

/// Errors raised across the workbench.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("argument {value} at byte {offset} is not prime")]
    NotPrime { offset: usize, value: u64 },
    #[error("cyclic order {value} at byte {offset} must be at least 2")]
    CyclicOrder { offset: usize, value: u64 },
    #[error("invalid term: {0}")]
    InvalidTerm(String),
    #[error("the trivial group has no verdict")]
    TrivialGroup,
    #[error("term is not topologically characteristically simple (condition {0} fails)")]
    NotSimple(u8),
    #[error("division by zero")]
    DivisionByZero,
    #[error("prime mismatch: {0} vs {1}")]
    PrimeMismatch(u64, u64),
    #[error("insufficient precision: {0}")]
    Precision(String),
    #[error("vectors are dependent at the working precision")]
    Dependent,
    #[error("no unit pivot available at step {0}: the chain is not a chain of direct summands")]
    NoUnitPivot(usize),
    #[error("submodule is not pure")]
    Impure,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("singular matrix")]
    Singular,
    #[error("duplicate entries: {0}")]
    Duplicate(String),
    #[error("enumeration budget of {budget} elements exceeded (group order {order})")]
    Budget { budget: usize, order: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
