use thiserror::Error;

use crate::polyops::Chart;

#[derive(Debug, Error)]
pub enum Error {
    #[error("chart mismatch: expected {expected}, found {found}")]
    ChartMismatch { expected: Chart, found: Chart },

    #[error("composition outside polynomial subring: {0}")]
    CompositionOutsidePolynomialSubring(String),

    #[error("operator does not descend to tau chart: {0}")]
    NotDescending(String),

    #[error("singular point: {0}")]
    SingularPoint(String),

    #[error("singular configuration: {0}")]
    SingularConfiguration(String),

    #[error("divergent potential: {0}")]
    DivergentPotential(String),

    #[error("w3 is undefined: {0}")]
    UndefinedW3(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invariance violation: image of {monomial} leaves the span (stray terms: {stray})")]
    InvarianceViolation { monomial: String, stray: String },

    #[error("assembly identity violated for {algebra}: difference = {difference}")]
    AssemblyIdentityViolation { algebra: String, difference: String },

    #[error("numerical failure: {message}")]
    NumericalFailure {
        message: String,
        partial: Vec<num_complex::Complex64>,
    },

    #[error("ill-conditioned metric inversion (condition number {0:.3e})")]
    Conditioning(f64),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
