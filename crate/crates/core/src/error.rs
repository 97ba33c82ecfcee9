use thiserror::Error;

/// Errors surfaced by the exact and analytic layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("invalid precision context: {0}")]
    InvalidContext(String),

    #[error("series order {have} is insufficient at this point; need at least {need}")]
    InsufficientOrder { have: usize, need: usize },

    #[error("fourier cutoff {have} is insufficient at this point; need at least {need}")]
    InsufficientCutoff { have: usize, need: usize },

    #[error("quadrature did not converge after {refinements} refinements (residual {residual:e})")]
    QuadratureDivergence { refinements: u32, residual: f64 },

    #[error("stencil of radius {radius} x h leaves the upper half-plane at v = {v}")]
    StencilDomain { v: f64, radius: u32 },

    #[error("|q|^(1/24) underflows at v = {v}")]
    EtaUnderflow { v: f64 },

    #[error("empty input")]
    EmptyInput,

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("{0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
