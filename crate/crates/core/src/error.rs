use thiserror::Error;

/// Errors raised by the link model, solvers and placement search.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum RisError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("degenerate geometry: {0}")]
    DegenerateGeometry(String),

    #[error("degenerate triangle: distances ({d_ti}, {d_ir}, {d_tr}) violate the triangle inequality")]
    DegenerateTriangle { d_ti: f64, d_ir: f64, d_tr: f64 },

    #[error("value {value} outside domain {domain}")]
    Domain { value: f64, domain: &'static str },

    #[error("panel is shadowed: pattern product is zero, no power reaches the receiver over the RIS link")]
    ShadowedPanel,

    #[error("far-field conditions violated (ratios {ratios:?}, margin {margin})")]
    FarFieldViolation { ratios: [f64; 3], margin: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("phase entry {index} is not unit modulus (|θ| = {modulus})")]
    NotUnitModulus { index: usize, modulus: f64 },

    #[error("channel is identically zero")]
    ZeroChannel,

    #[error("power iteration did not converge after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("feasible region is empty")]
    EmptyFeasible,

    #[error("search too large: {0}")]
    TooLarge(String),
}

pub type Result<T> = std::result::Result<T, RisError>;
