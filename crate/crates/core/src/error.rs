use thiserror::Error;

/// Errors produced by the model, constraint, solver, and diagnostics layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    /// Parameter set violates the admissible regime (d > 0, eps > 0, chi*mu > 0).
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// An evaluation point or function argument left its admissible domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// A configuration value is structurally invalid (grid size, profile length, ...).
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// The pointwise degradation rate failed its constancy check, which
    /// signals a steady state with an inconsistent shift slope.
    #[error("sigma non-constancy: spread {spread:e} exceeds {limit:e}")]
    SigmaNotConstant { spread: f64, limit: f64 },

    /// A field left the finite range during time integration.
    #[error("solution diverged at t = {t}")]
    Divergence { t: f64 },

    /// Not enough usable samples for a requested fit.
    #[error("insufficient samples: {0}")]
    InsufficientSamples(String),
}
