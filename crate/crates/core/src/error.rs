use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("qubit {qubit} out of range for a {num_qubits}-qubit circuit")]
    QubitOutOfRange { qubit: usize, num_qubits: usize },

    #[error("qubit {0} used more than once in a single gate")]
    DuplicateQubit(usize),

    #[error("control qubits overlap the controlled circuit at qubit {0}")]
    OverlappingControls(usize),

    #[error("{requested} qubits exceeds the cap of {cap}")]
    QubitCapExceeded { requested: usize, cap: usize },

    #[error("unknown gate kind `{0}`")]
    UnknownGateKind(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("state is not normalized (norm = {norm})")]
    NotNormalized { norm: f64 },

    #[error("matrix is singular (pivot magnitude {pivot:e})")]
    SingularMatrix { pivot: f64 },

    #[error("phase solver did not converge after {iterations} iterations (residual {residual:e})")]
    NonConvergence { iterations: usize, residual: f64 },

    #[error("polynomial has mixed parity")]
    MixedParity,

    #[error("flag convention mismatch: {0}")]
    FlagMismatch(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
