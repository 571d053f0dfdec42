//! Core library for a one-dimensional logarithmic-chemotaxis model.
//!
//! The cell density `u` and the gradient variable `v = (ln c)_x` of the
//! chemical concentration `c` evolve on the unit interval according to
//!
//! ```text
//! u_t = d u_xx - chi (u v)_x
//! v_t = eps v_xx + 2 eps v v_x - mu u_x
//! ```
//!
//! with Dirichlet data on both fields. The crate provides
//!
//! - [`steady`]: the four explicit steady-state families (power, sec²/tan,
//!   csc²/cot, csch²/coth), their derivatives, residuals against the
//!   governing equations, the inferred degradation rate `sigma`, and the
//!   reconstructed concentration profile;
//! - [`constraints`]: derivation and validation of the admissible boundary
//!   data per family, the stability gate on the boundary values, and the
//!   exclusivity gap function;
//! - [`solver`]: a semi-implicit (IMEX) finite-difference integrator with
//!   implicit diffusion and explicit transport;
//! - [`diagnostics`]: discrete norms, the weighted perturbation energy, the
//!   stability quantity `L(x)`, and exponential decay-rate fitting;
//! - [`presets`]: the five compiled-in benchmark configurations.

pub mod constraints;
pub mod diagnostics;
mod error;
pub mod model;
pub mod presets;
pub mod special;
pub mod steady;
pub mod solver;

pub use constraints::{
    derive_boundary, exclusivity_gap, stability_gate, validate_state, AdmissibilityReport,
    BoundaryData, StabilityGate, Violation,
};
pub use diagnostics::{
    discrete_norm, energy_monotone_after, fit_decay, h1_seminorm, script_l, weighted_norm,
    DecayFit, DiagnosticsSeries, NormKind,
};
pub use error::ModelError;
pub use model::{kappa, ModelParams};
pub use presets::{Preset, PresetName};
pub use solver::{
    build_initial, run, steady_error, step, Grid1D, InitialProfile, RunOutput, SimConfig,
    SimState, SteadyError,
};
pub use steady::{CbarProfile, SigmaClass, SteadyJet, SteadyState, SteadyStateFamily};

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, ModelError>;
