use alloc::string::String;

/// Errors raised by the exact kernel.
#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
pub enum Error {
    #[error("denominator vanishes at rho = 0")]
    PoleAtZero,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("series precision exhausted")]
    PrecisionExhausted,
    #[error("matrix is not invertible over its coefficient ring: {0}")]
    NonInvertible(&'static str),
    #[error("symmetric form is degenerate")]
    DegenerateForm,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("structure constants violate the Jacobi identity at ({a}, {b}, {c}; {d})")]
    Jacobi { a: usize, b: usize, c: usize, d: usize },
    #[error("linear system at order {order} is singular (rank {rank} < {unknowns})")]
    SingularSystem { order: usize, rank: usize, unknowns: usize },
    #[error("linear system at order {order} is inconsistent")]
    InconsistentSystem { order: usize },
    #[error("ambient dimension must be odd, got {0}")]
    EvenDimension(usize),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("division by zero in expression")]
    DivisionByZero,
}
