use thiserror::Error;

/// Failures raised by the numerical kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("power iteration did not converge after {iterations} iterations (last estimate {last})")]
    NoConvergence { iterations: usize, last: f64 },

    #[error("matrix is singular: pivot magnitude {pivot:e} at step {step}")]
    Singular { step: usize, pivot: f64 },

    #[error("symbol is not invertible: |f(0)| = {constant:e}")]
    NotInvertible { constant: f64 },

    #[error("inconsistent Bezout pair: coefficient {index} of f*g deviates from the unit by {deviation:e}")]
    InconsistentBezout { index: usize, deviation: f64 },

    #[error("quadrature with {samples} samples reaches Gram deviation {deviation:e}; retry with more samples")]
    Accuracy { samples: usize, deviation: f64 },

    #[error("inverse-norm paths disagree at n = {n}, r = {r}: {series} vs {solve}")]
    Consistency {
        n: usize,
        r: f64,
        series: f64,
        solve: f64,
    },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("search failure: {0}")]
    Search(String),
}

pub type Result<T> = std::result::Result<T, Error>;
