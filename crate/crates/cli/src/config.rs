//! Flat key-value configuration files.
//!
//! One `key = value` pair per line, `#` starts a comment, keys are dotted
//! paths. Recognized keys:
//!
//! ```text
//! params.d  params.chi  params.eps  params.mu        model constants
//! boundary.alpha1  boundary.alpha2                   Dirichlet data for u
//! boundary.beta1   boundary.beta2                    Dirichlet data for v
//! initial.kind          linear | sine | steady:<family>   (default linear)
//! grid.nx               interior node count               (default 499)
//! grid.dt               time step                         (default 0.001)
//! run.t_end             final time                        (default 2.0)
//! run.snapshot_every    diagnostics stride in steps       (default 10)
//! ```
//!
//! `params.*` and `boundary.*` are required; everything else falls back to
//! the benchmark defaults. Unknown keys are rejected.

use crate::error::CliError;
use chemo_core::presets::{BENCH_DT, BENCH_NX, BENCH_SNAPSHOT_EVERY, BENCH_T_END};
use chemo_core::{BoundaryData, ModelParams, SteadyStateFamily};
use std::collections::BTreeMap;
use std::path::Path;

/// Initial-profile selector as written in a config file.
#[derive(Debug, Clone, PartialEq)]
pub enum InitialKind {
    Linear,
    Sine,
    Steady(SteadyStateFamily),
}

impl InitialKind {
    fn parse(s: &str) -> Result<Self, CliError> {
        let s = s.trim();
        if let Some(fam) = s.strip_prefix("steady:") {
            let family = SteadyStateFamily::parse(fam)
                .map_err(|e| CliError::Config(format!("initial.kind: {e}")))?;
            return Ok(InitialKind::Steady(family));
        }
        match s {
            "linear" => Ok(InitialKind::Linear),
            "sine" => Ok(InitialKind::Sine),
            other => Err(CliError::Config(format!(
                "initial.kind must be linear, sine, or steady:<family>, got '{other}'"
            ))),
        }
    }

    pub fn as_str(&self) -> String {
        match self {
            InitialKind::Linear => "linear".into(),
            InitialKind::Sine => "sine".into(),
            InitialKind::Steady(f) => format!("steady:{f}"),
        }
    }
}

/// A parsed configuration, before any command-line overrides.
#[derive(Debug, Clone)]
pub struct FileConfig {
    pub params: ModelParams,
    pub boundary: BoundaryData,
    pub initial: InitialKind,
    pub nx: usize,
    pub dt: f64,
    pub t_end: f64,
    pub snapshot_every: usize,
}

const KNOWN_KEYS: &[&str] = &[
    "params.d",
    "params.chi",
    "params.eps",
    "params.mu",
    "boundary.alpha1",
    "boundary.alpha2",
    "boundary.beta1",
    "boundary.beta2",
    "initial.kind",
    "grid.nx",
    "grid.dt",
    "run.t_end",
    "run.snapshot_every",
];

fn parse_pairs(text: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut map = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(CliError::Config(format!("line {}: expected 'key = value'", lineno + 1)));
        };
        let key = key.trim().to_string();
        if !KNOWN_KEYS.contains(&key.as_str()) {
            return Err(CliError::Config(format!("line {}: unknown key '{key}'", lineno + 1)));
        }
        if map.insert(key.clone(), value.trim().to_string()).is_some() {
            return Err(CliError::Config(format!("line {}: duplicate key '{key}'", lineno + 1)));
        }
    }
    Ok(map)
}

fn required_f64(map: &BTreeMap<String, String>, key: &str) -> Result<f64, CliError> {
    let raw = map
        .get(key)
        .ok_or_else(|| CliError::Config(format!("missing required key '{key}'")))?;
    let value: f64 = raw
        .parse()
        .map_err(|_| CliError::Config(format!("{key}: '{raw}' is not a number")))?;
    if !value.is_finite() {
        return Err(CliError::Config(format!("{key}: value must be finite")));
    }
    Ok(value)
}

fn optional_f64(map: &BTreeMap<String, String>, key: &str, default: f64) -> Result<f64, CliError> {
    if map.contains_key(key) { required_f64(map, key) } else { Ok(default) }
}

fn optional_usize(
    map: &BTreeMap<String, String>,
    key: &str,
    default: usize,
) -> Result<usize, CliError> {
    match map.get(key) {
        None => Ok(default),
        Some(raw) => raw
            .parse()
            .map_err(|_| CliError::Config(format!("{key}: '{raw}' is not a positive integer"))),
    }
}

/// Parse a configuration file from disk.
pub fn load(path: &Path) -> Result<FileConfig, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    parse(&text)
}

/// Parse configuration text.
pub fn parse(text: &str) -> Result<FileConfig, CliError> {
    let map = parse_pairs(text)?;
    let params = ModelParams {
        d: required_f64(&map, "params.d")?,
        chi: required_f64(&map, "params.chi")?,
        eps: required_f64(&map, "params.eps")?,
        mu: required_f64(&map, "params.mu")?,
    };
    let boundary = BoundaryData {
        alpha1: required_f64(&map, "boundary.alpha1")?,
        alpha2: required_f64(&map, "boundary.alpha2")?,
        beta1: required_f64(&map, "boundary.beta1")?,
        beta2: required_f64(&map, "boundary.beta2")?,
    };
    let initial = match map.get("initial.kind") {
        Some(raw) => InitialKind::parse(raw)?,
        None => InitialKind::Linear,
    };
    Ok(FileConfig {
        params,
        boundary,
        initial,
        nx: optional_usize(&map, "grid.nx", BENCH_NX)?,
        dt: optional_f64(&map, "grid.dt", BENCH_DT)?,
        t_end: optional_f64(&map, "run.t_end", BENCH_T_END)?,
        snapshot_every: optional_usize(&map, "run.snapshot_every", BENCH_SNAPSHOT_EVERY)?,
    })
}

/// Canonical text form of a resolved configuration: fixed key order, full
/// float precision. Identical setups hash identically.
pub fn canonical_text(cfg: &FileConfig) -> String {
    let f = |x: f64| format!("{x:e}");
    format!(
        "params.d = {}\nparams.chi = {}\nparams.eps = {}\nparams.mu = {}\n\
         boundary.alpha1 = {}\nboundary.alpha2 = {}\nboundary.beta1 = {}\nboundary.beta2 = {}\n\
         initial.kind = {}\ngrid.nx = {}\ngrid.dt = {}\nrun.t_end = {}\nrun.snapshot_every = {}\n",
        f(cfg.params.d),
        f(cfg.params.chi),
        f(cfg.params.eps),
        f(cfg.params.mu),
        f(cfg.boundary.alpha1),
        f(cfg.boundary.alpha2),
        f(cfg.boundary.beta1),
        f(cfg.boundary.beta2),
        cfg.initial.as_str(),
        cfg.nx,
        f(cfg.dt),
        f(cfg.t_end),
        cfg.snapshot_every,
    )
}

/// FNV-1a over the canonical text; stable across runs and platforms.
pub fn config_hash(cfg: &FileConfig) -> u64 {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for byte in canonical_text(cfg).as_bytes() {
        hash ^= u64::from(*byte);
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}
