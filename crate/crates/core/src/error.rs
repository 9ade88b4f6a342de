use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} atoms vs {right} atoms")]
    Dimension { left: usize, right: usize },

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("capacity exceeded: {atoms} atoms, exact subset enumeration supports at most {max}; approximation is unsupported")]
    Capacity { atoms: usize, max: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("degenerate generator `{name}`: f''(1) = {f2} must be positive")]
    DegenerateGenerator { name: String, f2: f64 },

    #[error("generator `{name}` exposes derivatives only up to order {available}, order {required} is needed")]
    InsufficientOrder {
        name: String,
        required: usize,
        available: usize,
    },

    #[error("fourth-order coefficients unavailable: {0}")]
    FourthOrderUndefined(String),

    #[error("precondition failed: {message} (computed {computed})")]
    Precondition { message: String, computed: f64 },

    #[error("polynomial division by the zero polynomial")]
    DivisionByZero,

    #[error("polynomial degree error: {0}")]
    Degree(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
