use num_complex::Complex64;
use thiserror::Error;

pub type Result<T, E = ModelError> = std::result::Result<T, E>;

/// Errors raised by the forward model.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("{name} = {value} is out of range (requires {requirement})")]
    Domain {
        name: &'static str,
        value: f64,
        requirement: &'static str,
    },

    #[error("logarithm branch point: q1 equals omega = {omega} with zero collision frequency")]
    BranchPoint { omega: f64 },

    #[error("resonance singularity at mode {mode}: |denominator| = {magnitude:e}")]
    ResonanceSingularity { mode: u64, magnitude: f64 },

    #[error(
        "mode sum not converged after {terms} terms (best estimate {estimate}, error estimate {error_estimate:e})"
    )]
    Convergence {
        terms: usize,
        estimate: Complex64,
        error_estimate: f64,
    },

    #[error("amplitude factor pole: sqrt(eps1) cos(theta) Z = -1")]
    AmplitudePole,

    #[error("degenerate configuration: {0}")]
    Degenerate(&'static str),

    #[error("invalid sweep: {0}")]
    Config(String),

    #[error("{context}: {source}")]
    Context {
        context: String,
        #[source]
        source: Box<ModelError>,
    },
}

impl ModelError {
    pub(crate) fn domain(name: &'static str, value: f64, requirement: &'static str) -> Self {
        ModelError::Domain {
            name,
            value,
            requirement,
        }
    }

    /// Wraps the error with a description of where it happened.
    pub fn context(self, context: impl Into<String>) -> Self {
        ModelError::Context {
            context: context.into(),
            source: Box::new(self),
        }
    }

    /// The innermost error, with all context layers removed.
    pub fn root(&self) -> &ModelError {
        match self {
            ModelError::Context { source, .. } => source.root(),
            other => other,
        }
    }
}
