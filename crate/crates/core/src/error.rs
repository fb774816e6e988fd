use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian: max |A_xy - conj(A_yx)| = {max_asymmetry:e}")]
    NotHermitian { max_asymmetry: f64 },

    #[error("trace is {trace}, expected 1")]
    TraceNotUnit { trace: f64 },

    #[error("operator has negative eigenvalue {min_eigenvalue:e}")]
    NotPositive { min_eigenvalue: f64 },

    #[error("state vector has squared norm {norm_sqr}, expected 1")]
    NotNormalized { norm_sqr: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid shape: {0}")]
    Shape(String),

    #[error(
        "n = {n} exceeds the enumeration cap of {cap}: it would require {count} balanced functions"
    )]
    Capacity { n: u32, cap: u32, count: String },

    #[error("invalid weights: {0}")]
    InvalidWeights(String),

    #[error("POVM elements do not sum to the identity (max deviation {residual:e})")]
    PovmIncomplete { residual: f64 },

    #[error("POVM element is not a valid effect: {0}")]
    PovmElement(String),

    #[error("function is neither constant nor balanced")]
    NotPromise,

    #[error("linearized thermal state is not a density operator: n*alpha1 = {n_alpha1} >= 1")]
    NotAState { n_alpha1: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
