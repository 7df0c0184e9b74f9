//! Error types shared across the crate.

use thiserror::Error;

/// Errors produced by constants, quadrature, body operations and functionals.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter fell outside its mathematical domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// An integrand evaluated to a non-finite value.
    #[error("integration error: integrand returned {value} at node {node}")]
    Integration { node: f64, value: f64 },

    /// A required declaration (tail exponent, fixture, sample count) is missing or invalid.
    #[error("configuration error: {0}")]
    Config(String),

    /// A Monte Carlo integrand was non-positive where positivity is required.
    #[error("degenerate input: {context} (sample {sample_index}, value {value})")]
    DegenerateInput {
        context: String,
        sample_index: usize,
        value: f64,
    },

    /// A zonoid generator does not span the ambient space.
    #[error("degenerate norm: generator does not span the space ({0})")]
    DegenerateNorm(String),

    /// A support function was non-positive on the sphere.
    #[error("degenerate body: non-positive support {value} in direction {direction:?}")]
    DegenerateBody { value: f64, direction: Vec<f64> },

    /// A profile produced zero directional energy on a sampled frame.
    #[error("degenerate profile: zero directional energy on sampled frame {frame_index}")]
    DegenerateProfile { frame_index: usize },

    /// Polytope vertex/facet data failed consistency validation.
    #[error("invalid polytope: {0}")]
    InvalidPolytope(String),

    /// The monotone chain was violated beyond the statistical tolerance.
    #[error("chain violation:\n{diagnostics}")]
    ChainViolation { diagnostics: String },

    /// Fixture or config file could not be read or parsed.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    /// JSON (de)serialization failure.
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
