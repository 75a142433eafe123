use thiserror::Error;

/// Errors raised by the algebra kernels and the file-format parsers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("characteristic {0} is neither zero nor a prime")]
    Characteristic(u64),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("graph is not saturated: nodes {0} and {1} are not adjacent")]
    NotSaturated(usize, usize),

    #[error("monomial ideal is not artinian: no pure power of x{0}")]
    NotArtinian(usize),

    #[error("invalid monomial ideal: {0}")]
    InvalidIdeal(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("not a Riemann-Roch ideal: {0}")]
    NotRiemannRoch(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("integer overflow in {0}")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
