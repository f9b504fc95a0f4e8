use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("{n_qubits} qubits exceeds the dense limit of {limit}")]
    Capacity { n_qubits: usize, limit: usize },

    #[error("cannot exponentiate an identity-only Pauli string")]
    DegenerateGenerator,

    #[error("unsupported model: {0}")]
    UnsupportedModel(String),

    #[error("compilation error: {0}")]
    Compilation(String),

    #[error("parameter binding error: {0}")]
    Binding(String),

    #[error("probability {0} outside [0, 1]")]
    InvalidProbability(f64),

    #[error("invalid noise model: {0}")]
    InvalidNoise(String),

    #[error("numerical integrity violated: {0}")]
    NumericalIntegrity(String),

    #[error("target state is not normalized (norm^2 = {0})")]
    UnnormalizedTarget(f64),

    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NonHermitian(f64),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("model error: {0}")]
    Model(String),

    #[error("optimization aborted: {0}")]
    Optimization(String),
}

pub type Result<T> = std::result::Result<T, Error>;
