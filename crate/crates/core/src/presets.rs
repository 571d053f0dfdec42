//! Compiled-in benchmark configurations.
//!
//! All five presets share the parameter set `(d, chi, eps, mu) =
//! (2, 1, 0.5, 1)` and the mesh `(dx, dt) = (0.002, 0.001)` up to `t = 2`,
//! and anchor the left cell density at `u(0) = 4`. The four analytic
//! presets derive their remaining boundary values from the family chain
//! relations, start from the straight-line interpolant of the boundary
//! data, and carry their steady state as the error reference. The fifth
//! (`undiscovered`) preset uses boundary data `(4, 21, -0.7, 0.7)` that no
//! family admits, with a quarter-sine initial ramp, and has no reference.

use crate::constraints::{derive_boundary, BoundaryData};
use crate::model::ModelParams;
use crate::solver::{Grid1D, InitialProfile, SimConfig};
use crate::steady::{SteadyState, SteadyStateFamily};
use crate::error::ModelError;

/// Shared parameter set of all presets.
pub fn benchmark_params() -> ModelParams {
    ModelParams { d: 2.0, chi: 1.0, eps: 0.5, mu: 1.0 }
}

/// Left cell-density anchor shared by all presets.
pub const ANCHOR_ALPHA1: f64 = 4.0;

/// Interior node count of the benchmark mesh (dx = 0.002).
pub const BENCH_NX: usize = 499;

/// Time step of the benchmark mesh.
pub const BENCH_DT: f64 = 1e-3;

/// Final time of the benchmark runs.
pub const BENCH_T_END: f64 = 2.0;

/// Diagnostics stride (in steps) of the benchmark runs.
pub const BENCH_SNAPSHOT_EVERY: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PresetName {
    Power,
    Sec,
    Csc,
    Csch,
    Undiscovered,
}

impl PresetName {
    pub const ALL: [PresetName; 5] = [
        PresetName::Power,
        PresetName::Sec,
        PresetName::Csc,
        PresetName::Csch,
        PresetName::Undiscovered,
    ];

    /// The four presets with an explicit steady reference.
    pub const ANALYTIC: [PresetName; 4] =
        [PresetName::Power, PresetName::Sec, PresetName::Csc, PresetName::Csch];

    pub fn name(&self) -> &'static str {
        match self {
            PresetName::Power => "power",
            PresetName::Sec => "sec",
            PresetName::Csc => "csc",
            PresetName::Csch => "csch",
            PresetName::Undiscovered => "undiscovered",
        }
    }

    pub fn parse(s: &str) -> Result<Self, ModelError> {
        match s.trim().to_ascii_lowercase().as_str() {
            "power" => Ok(PresetName::Power),
            "sec" => Ok(PresetName::Sec),
            "csc" => Ok(PresetName::Csc),
            "csch" => Ok(PresetName::Csch),
            "undiscovered" => Ok(PresetName::Undiscovered),
            other => Err(ModelError::InvalidConfig(format!("unknown preset '{other}'"))),
        }
    }

    /// Family behind the preset, when there is one.
    pub fn family(&self) -> Option<SteadyStateFamily> {
        match self {
            PresetName::Power => Some(SteadyStateFamily::Power),
            PresetName::Sec => Some(SteadyStateFamily::SecTan),
            PresetName::Csc => Some(SteadyStateFamily::CscCot),
            PresetName::Csch => Some(SteadyStateFamily::CschCoth),
            PresetName::Undiscovered => None,
        }
    }
}

impl std::fmt::Display for PresetName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// One fully specified benchmark experiment.
#[derive(Debug, Clone)]
pub struct Preset {
    pub name: PresetName,
    pub params: ModelParams,
    pub boundary: BoundaryData,
    pub initial: InitialProfile,
    pub grid: Grid1D,
    pub t_end: f64,
    pub snapshot_every: usize,
    pub reference: Option<SteadyState>,
}

impl Preset {
    pub fn sim_config(&self) -> SimConfig {
        SimConfig {
            params: self.params,
            boundary: self.boundary,
            initial: self.initial.clone(),
            grid: self.grid,
            t_end: self.t_end,
            snapshot_every: self.snapshot_every,
            reference: self.reference.clone(),
        }
    }
}

/// Build a preset. Compiled-in values, so construction cannot fail.
pub fn get(name: PresetName) -> Preset {
    let params = benchmark_params();
    let grid = Grid1D::new(BENCH_NX, BENCH_DT).expect("benchmark grid");
    let (boundary, initial, reference) = match name.family() {
        Some(family) => {
            let report = derive_boundary(family, &params, ANCHOR_ALPHA1)
                .expect("benchmark params are valid");
            assert!(report.is_admissible(), "preset boundary data must be admissible");
            let boundary = report.boundary.expect("admissible row has boundary data");
            let reference = SteadyState::new(family, report.b.expect("offset"), params)
                .expect("derived offset is admissible");
            (boundary, InitialProfile::LinearInterpolant, Some(reference))
        }
        None => {
            let boundary = BoundaryData::new(4.0, 21.0, -0.7, 0.7).expect("boundary row");
            (boundary, InitialProfile::SinePerturbed, None)
        }
    };
    Preset {
        name,
        params,
        boundary,
        initial,
        grid,
        t_end: BENCH_T_END,
        snapshot_every: BENCH_SNAPSHOT_EVERY,
        reference,
    }
}
