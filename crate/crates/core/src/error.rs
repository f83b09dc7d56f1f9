use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid hypergraph spec: {0}")]
    InvalidSpec(String),
    #[error("{n} qubits exceeds the dense cap of {cap}")]
    DenseCapExceeded { n: usize, cap: usize },
    #[error("{n} qubits exceeds the contraction cap of {cap}")]
    ContractionCapExceeded { n: usize, cap: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("state is not normalized (norm^2 = {0})")]
    NotNormalized(f64),
    #[error("optimizer did not converge after {iterations} iterations on any restart")]
    NotConverged { iterations: usize },
    #[error("state is not of GHZ plus odd-weight form (residual {residual:e})")]
    NotGhzOddForm { residual: f64 },
    #[error("no closed form covers n={n}, k={k:?}")]
    UnsupportedFamily { n: usize, k: Vec<usize> },
    #[error("no table row applies: {0}")]
    UnsupportedCase(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("cross-check failed for {what}: {a} vs {b}")]
    CrossCheck { what: String, a: f64, b: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
