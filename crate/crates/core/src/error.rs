use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} qubits vs {right} qubits")]
    DimensionMismatch { left: usize, right: usize },

    #[error("qubit count {0} outside supported range 1..=64")]
    QubitCount(usize),

    #[error("qubit index {index} out of range for {n} qubits")]
    QubitIndex { index: usize, n: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("dense conversion refused: {n} qubits exceeds limit {limit}")]
    DenseLimit { n: usize, limit: usize },

    #[error(
        "exact coefficient grew to {bits} bits (budget {budget}); raise --bit-budget or use --mode float"
    )]
    OverflowGuard { bits: u64, budget: u64 },

    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },

    #[error("{path}: {message}")]
    Schema { path: String, message: String },

    #[error("missing coefficient `{0}`")]
    MissingCoefficient(String),

    #[error("generator {0} has an identity component")]
    IdentityGenerator(usize),

    #[error("{0}")]
    InvalidArgument(String),

    #[error("graph too large: {vertices} vertices (limit {limit})")]
    GraphTooLarge { vertices: usize, limit: usize },

    #[error("constraints unsatisfied after {0} draws")]
    Unsatisfiable(usize),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn schema(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Schema {
            path: path.into(),
            message: message.into(),
        }
    }

    /// Process exit code for this error: 3 for resource guards, 2 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::OverflowGuard { .. } | Error::DenseLimit { .. } | Error::GraphTooLarge { .. } => 3,
            _ => 2,
        }
    }
}
