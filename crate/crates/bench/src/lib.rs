//! Shared fixtures for the criterion benches.

use chemo_core::presets::{self, PresetName};
use chemo_core::{SimConfig, SteadyState};

/// The four analytic benchmark members.
pub fn analytic_states() -> Vec<SteadyState> {
    PresetName::ANALYTIC
        .iter()
        .map(|&name| presets::get(name).reference.expect("analytic preset has a reference"))
        .collect()
}

/// Benchmark-mesh configuration of a preset, with an adjustable horizon.
pub fn preset_config(name: PresetName, t_end: f64) -> SimConfig {
    let mut cfg = presets::get(name).sim_config();
    cfg.t_end = t_end;
    cfg
}
