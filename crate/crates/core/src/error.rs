use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("amplitude vector has length {len}, expected a power of two")]
    NotPowerOfTwo { len: usize },

    #[error("state is not normalized (norm² = {0})")]
    NotNormalized(f64),

    #[error("qubit count {got} outside supported range [{min}, {max}]")]
    QubitRange { got: usize, min: usize, max: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid bipartition: {0}")]
    InvalidPartition(String),

    #[error("matrix is not Hermitian (deviation {0:e})")]
    NotHermitian(f64),

    #[error("trace is not 1 (got {0})")]
    InvalidTrace(f64),

    #[error("not positive semi-definite (eigenvalue {0:e})")]
    NotPsd(f64),

    #[error("spectrum sum drifted from 1 by {0:e}")]
    SpectrumDrift(f64),

    #[error("matrix is not unitary (deviation {0:e})")]
    NotUnitary(f64),

    #[error("invalid Pauli string: {0}")]
    InvalidPauli(String),

    #[error("exhaustive budget needs n ≤ {max} qubits (got {got}); use the sampled estimator")]
    TooLargeForExhaustive { got: usize, max: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("degenerate statistics: {0}")]
    DegenerateStatistics(String),

    #[error("sampled vector norm vanished")]
    DegenerateSample,

    #[error("memory guard: estimated {required} bytes exceeds limit of {limit} bytes")]
    MemoryGuard { required: u128, limit: u128 },

    #[error("eigendecomposition failed: {0}")]
    Numerical(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
