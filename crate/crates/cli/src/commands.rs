//! Subcommand implementations. Each returns the process exit code on the
//! success path; hard failures bubble up as [`CliError`].

use crate::config::{self, FileConfig, InitialKind};
use crate::csvio::{self, SweepRow};
use crate::error::CliError;
use chemo_core::presets::{self, PresetName};
use chemo_core::{
    derive_boundary, fit_decay, h1_seminorm, kappa, run, stability_gate, steady_error,
    validate_state, BoundaryData, DiagnosticsSeries, Grid1D, InitialProfile, ModelError,
    ModelParams, SimConfig, SimState, StabilityGate, SteadyState, SteadyStateFamily,
};
use std::path::{Path, PathBuf};

/// Mesh/time overrides shared by `run` and `sweep`.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub nx: Option<usize>,
    pub dt: Option<f64>,
    pub t_end: Option<f64>,
    pub snapshot_every: Option<usize>,
}

/// A fully resolved experiment: where it came from, the solver config, and
/// the steady-state family backing the error columns (when one admits the
/// boundary data).
pub struct RunSetup {
    pub label: String,
    pub file_cfg: FileConfig,
    pub sim: SimConfig,
    pub detected: Option<(SteadyStateFamily, f64)>,
}

fn detect_family(
    params: &ModelParams,
    boundary: &BoundaryData,
) -> Result<Option<(SteadyStateFamily, f64)>, CliError> {
    for family in SteadyStateFamily::ALL {
        let report = validate_state(family, params, boundary)?;
        if report.is_admissible() {
            return Ok(Some((family, report.b.expect("admissible report has an offset"))));
        }
    }
    Ok(None)
}

fn build_setup(label: String, mut file_cfg: FileConfig, ov: &Overrides) -> Result<RunSetup, CliError> {
    if let Some(nx) = ov.nx {
        file_cfg.nx = nx;
    }
    if let Some(dt) = ov.dt {
        file_cfg.dt = dt;
    }
    if let Some(t_end) = ov.t_end {
        file_cfg.t_end = t_end;
    }
    if let Some(se) = ov.snapshot_every {
        file_cfg.snapshot_every = se;
    }

    let detected = detect_family(&file_cfg.params, &file_cfg.boundary)?;
    let reference = match detected {
        Some((family, b)) => Some(SteadyState::new(family, b, file_cfg.params)?),
        None => None,
    };
    let initial = match &file_cfg.initial {
        InitialKind::Linear => InitialProfile::LinearInterpolant,
        InitialKind::Sine => InitialProfile::SinePerturbed,
        InitialKind::Steady(family) => {
            let report = derive_boundary(*family, &file_cfg.params, file_cfg.boundary.alpha1)?;
            let Some(b) = report.b.filter(|_| report.is_admissible()) else {
                return Err(CliError::Config(format!(
                    "initial.kind = steady:{family} is not admissible for this boundary data"
                )));
            };
            InitialProfile::ExplicitSteady(SteadyState::new(*family, b, file_cfg.params)?)
        }
    };
    let sim = SimConfig {
        params: file_cfg.params,
        boundary: file_cfg.boundary,
        initial,
        grid: Grid1D::new(file_cfg.nx, file_cfg.dt)?,
        t_end: file_cfg.t_end,
        snapshot_every: file_cfg.snapshot_every,
        reference,
    };
    Ok(RunSetup { label, file_cfg, sim, detected })
}

fn preset_file_cfg(preset: &presets::Preset) -> FileConfig {
    let initial = match preset.initial {
        InitialProfile::SinePerturbed => InitialKind::Sine,
        _ => InitialKind::Linear,
    };
    FileConfig {
        params: preset.params,
        boundary: preset.boundary,
        initial,
        nx: preset.grid.n,
        dt: preset.grid.dt,
        t_end: preset.t_end,
        snapshot_every: preset.snapshot_every,
    }
}

/// Resolve `--preset NAME` or `--config PATH` (exactly one) plus overrides.
pub fn resolve_setup(
    preset: Option<&str>,
    config_path: Option<&Path>,
    ov: &Overrides,
) -> Result<RunSetup, CliError> {
    match (preset, config_path) {
        (Some(name), None) => {
            let preset = presets::get(PresetName::parse(name)?);
            build_setup(preset.name.name().to_string(), preset_file_cfg(&preset), ov)
        }
        (None, Some(path)) => {
            let label = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "run".to_string());
            build_setup(label, config::load(path)?, ov)
        }
        _ => Err(CliError::Config("exactly one of --preset or --config is required".into())),
    }
}

fn out_root(flag: Option<PathBuf>) -> PathBuf {
    flag.or_else(|| std::env::var_os("CHEMO_OUT_DIR").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."))
}

/// `derive`: walk the constraint chain of one family from `u(0)`.
pub fn cmd_derive(family: &str, alpha1: f64, params: ModelParams) -> Result<u8, CliError> {
    let family = SteadyStateFamily::parse(family)?;
    params.validate()?;
    let k = kappa(&params)?;
    let report = derive_boundary(family, &params, alpha1)?;

    println!("family {} ({}), alpha1 = {}", family, family.label(), alpha1);
    println!("kappa = {k:.15}");
    if let Some(b) = report.b {
        println!("b = {b:.12}");
    }
    if let Some(bd) = &report.boundary {
        println!("alpha2 = {:.12}", bd.alpha2);
        println!("beta1 = {:.12}", bd.beta1);
        println!("beta2 = {:.12}", bd.beta2);
    }
    if report.is_admissible() {
        println!("admissible: yes");
        Ok(0)
    } else {
        for v in &report.violations {
            println!("violation: {v}");
        }
        println!("admissible: no");
        Ok(2)
    }
}

fn print_gate(family: SteadyStateFamily, gate: &StabilityGate) {
    match gate.lambda {
        Some(l) => println!("lambda = {l}"),
        None => println!("lambda undefined (2d = 3chi)"),
    }
    println!(
        "gate [{}]: {}",
        gate.condition_used,
        if gate.satisfied { "satisfied" } else { "NOT satisfied" }
    );
    if !gate.satisfied {
        println!(
            "note: the gate is a sufficient condition only, {family} states may still \
             attract; see the decay fit of a run for the empirical behavior"
        );
    }
}

/// `validate`: check the boundary data against every family.
pub fn cmd_validate(
    preset: Option<&str>,
    config_path: Option<&Path>,
) -> Result<u8, CliError> {
    let (params, boundary) = match (preset, config_path) {
        (Some(name), None) => {
            let p = presets::get(PresetName::parse(name)?);
            (p.params, p.boundary)
        }
        (None, Some(path)) => {
            let cfg = config::load(path)?;
            (cfg.params, cfg.boundary)
        }
        _ => return Err(CliError::Config("exactly one of --preset or --config is required".into())),
    };
    params.validate()?;
    println!("kappa = {:.15}", kappa(&params)?);
    println!(
        "boundary: u(0) = {}, u(1) = {}, v(0) = {}, v(1) = {}",
        boundary.alpha1, boundary.alpha2, boundary.beta1, boundary.beta2
    );

    let mut admitted = Vec::new();
    for family in SteadyStateFamily::ALL {
        let report = validate_state(family, &params, &boundary)?;
        if report.is_admissible() {
            println!("family {family}: ADMISSIBLE (b = {:.12})", report.b.unwrap());
            let gate = stability_gate(family, &params, &boundary)?;
            print_gate(family, &gate);
            admitted.push(family);
        } else {
            println!("family {family}: rejected");
            for v in &report.violations {
                println!("  - {v}");
            }
        }
    }
    if admitted.is_empty() {
        println!("verdict: no family admits this boundary data");
        Ok(2)
    } else {
        let names: Vec<&str> = admitted.iter().map(|f| f.name()).collect();
        println!("verdict: admitted by {}", names.join(", "));
        Ok(0)
    }
}

/// First-derivative-level perturbation energy `mu |u - ubar|_H1^2 +
/// |v - vbar|_H1^2` per snapshot, via one-sided differences. Reported next
/// to the weighted L2 energy; the discrete fields resolve this level
/// cleanly, unlike second derivatives.
fn h1_energy_series(
    snapshots: &[SimState],
    ss: &SteadyState,
    grid: &Grid1D,
    mu: f64,
) -> Result<DiagnosticsSeries, CliError> {
    let m = grid.node_count();
    let mut ubar = Vec::with_capacity(m);
    let mut vbar = Vec::with_capacity(m);
    for i in 0..m {
        let (u, v) = ss.eval(grid.x(i))?;
        ubar.push(u);
        vbar.push(v);
    }
    let mut series = DiagnosticsSeries::default();
    for snap in snapshots {
        let du: Vec<f64> = snap.u.iter().zip(&ubar).map(|(a, b)| a - b).collect();
        let dv: Vec<f64> = snap.v.iter().zip(&vbar).map(|(a, b)| a - b).collect();
        let hu = h1_seminorm(&du, grid);
        let hv = h1_seminorm(&dv, grid);
        series.times.push(snap.t);
        series.energy.push(mu * hu * hu + hv * hv);
        series.deriv_norm.push(0.0);
        series.err_u_l2.push(0.0);
        series.err_v_l2.push(0.0);
    }
    Ok(series)
}

/// Count sign changes of the interior second difference of `u`, ignoring
/// entries below 1e-6 of the largest curvature.
fn curvature_sign_changes(u: &[f64]) -> usize {
    let d2: Vec<f64> = (1..u.len() - 1).map(|i| u[i + 1] - 2.0 * u[i] + u[i - 1]).collect();
    let scale = d2.iter().fold(0.0f64, |m, &x| m.max(x.abs()));
    if scale == 0.0 {
        return 0;
    }
    let signs: Vec<bool> =
        d2.iter().filter(|x| x.abs() > 1e-6 * scale).map(|&x| x > 0.0).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// `run`: integrate one experiment and emit its CSVs.
pub fn cmd_run(
    preset: Option<&str>,
    config_path: Option<&Path>,
    ov: &Overrides,
    out_dir: Option<PathBuf>,
    emit_plot_script: bool,
) -> Result<u8, CliError> {
    let setup = resolve_setup(preset, config_path, ov)?;
    let run_dir = out_root(out_dir).join(&setup.label);
    std::fs::create_dir_all(&run_dir)
        .map_err(|e| CliError::Io(format!("{}: {e}", run_dir.display())))?;

    let out = run(&setup.sim)?;
    let grid = setup.sim.grid;

    let profile_path = run_dir.join("profile.csv");
    csvio::write_profile(&profile_path, &out.state, &grid, setup.sim.reference.as_ref())?;
    let series_path = run_dir.join("series.csv");
    csvio::write_series(&series_path, &out.series)?;
    let mut emitted = vec![profile_path, series_path];
    if emit_plot_script {
        let plot_path = run_dir.join("plot.gnuplot");
        csvio::write_plot_script(&plot_path, setup.sim.reference.is_some())?;
        emitted.push(plot_path);
    }

    println!("run: {} (config hash {:016x})", setup.label, config::config_hash(&setup.file_cfg));
    println!(
        "grid: nx = {}, dx = {}, dt = {}, t_end = {}, snapshot stride = {}",
        grid.n, grid.dx, grid.dt, setup.sim.t_end, setup.sim.snapshot_every
    );
    let final_deriv = *out.series.deriv_norm.last().unwrap_or(&0.0);
    println!("final time = {}, final deriv_norm = {:.6e}", out.state.t, final_deriv);

    match (&setup.detected, &setup.sim.reference) {
        (Some((family, b)), Some(ss)) => {
            println!("reference: {family} family (b = {b:.12})");
            let gate = stability_gate(*family, &setup.sim.params, &setup.sim.boundary)?;
            print_gate(*family, &gate);

            let err = steady_error(&out.state, ss)?;
            let mut u_sup = 0.0f64;
            let mut v_sup = 0.0f64;
            for i in 0..grid.node_count() {
                let (u, v) = ss.eval(grid.x(i))?;
                u_sup = u_sup.max(u.abs());
                v_sup = v_sup.max(v.abs());
            }
            println!(
                "final errors vs steady state: max u = {:.6e} (relative {:.6e}), max v = {:.6e} (relative {:.6e})",
                err.u_max,
                err.u_max / u_sup,
                err.v_max,
                err.v_max / v_sup
            );
            println!("               discrete L2: u = {:.6e}, v = {:.6e}", err.u_l2, err.v_l2);
            let window = (setup.sim.t_end / 4.0, setup.sim.t_end);
            match fit_decay(&out.series, window) {
                Ok(fit) => println!(
                    "energy decay over [{}, {}]: rate = {:.4}, r2 = {:.6}",
                    window.0, window.1, fit.rate, fit.r_squared
                ),
                Err(e) => println!("energy decay fit unavailable: {e}"),
            }
            let h1 = h1_energy_series(&out.snapshots, ss, &grid, setup.sim.params.mu)?;
            match fit_decay(&h1, window) {
                Ok(fit) => println!(
                    "H1-level decay over the same window: rate = {:.4}, r2 = {:.6}",
                    fit.rate, fit.r_squared
                ),
                Err(e) => println!("H1-level decay fit unavailable: {e}"),
            }
        }
        _ => {
            println!("reference: none (no family admits this boundary data)");
            let changes = curvature_sign_changes(&out.state.u);
            if changes >= 1 {
                println!(
                    "profile curvature changes sign {changes} time(s) in the bulk: \
                     the converged shape mixes convex and concave segments"
                );
            } else {
                println!("profile curvature keeps one sign across the bulk");
            }
        }
    }

    println!("files:");
    for path in &emitted {
        println!("  {}", path.display());
    }
    Ok(0)
}

/// `sweep`: rerun the experiment over several resolutions in parallel and
/// report the error trend.
pub fn cmd_sweep(
    preset: Option<&str>,
    config_path: Option<&Path>,
    nx_list: &[usize],
    ov: &Overrides,
    out_dir: Option<PathBuf>,
) -> Result<u8, CliError> {
    if nx_list.is_empty() {
        return Err(CliError::Config("--nx needs at least one resolution".into()));
    }
    let setup = resolve_setup(preset, config_path, ov)?;
    let run_dir = out_root(out_dir).join(&setup.label);
    std::fs::create_dir_all(&run_dir)
        .map_err(|e| CliError::Io(format!("{}: {e}", run_dir.display())))?;

    // simulations are value-semantic, so the resolutions run concurrently
    let results: Vec<Result<SweepRow, ModelError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = nx_list
            .iter()
            .map(|&nx| {
                let sim = &setup.sim;
                scope.spawn(move || -> Result<SweepRow, ModelError> {
                    let mut cfg = sim.clone();
                    cfg.grid = Grid1D::new(nx, sim.grid.dt)?;
                    let out = run(&cfg)?;
                    let err = match &cfg.reference {
                        Some(ss) => Some(steady_error(&out.state, ss)?),
                        None => None,
                    };
                    Ok(SweepRow {
                        nx,
                        dx: cfg.grid.dx,
                        err_u_max: err.map(|e| e.u_max),
                        err_v_max: err.map(|e| e.v_max),
                        err_u_l2: err.map(|e| e.u_l2),
                        err_v_l2: err.map(|e| e.v_l2),
                        deriv_norm: *out.series.deriv_norm.last().unwrap_or(&0.0),
                    })
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("sweep worker panicked")).collect()
    });

    let mut rows = Vec::with_capacity(results.len());
    for r in results {
        rows.push(r?);
    }

    println!("sweep: {} over nx = {:?}", setup.label, nx_list);
    println!("{:>7} {:>12} {:>14} {:>14} {:>10}", "nx", "dx", "err_u_max", "deriv_norm", "order");
    for i in 0..rows.len() {
        let order = if i > 0 {
            match (rows[i - 1].err_u_max, rows[i].err_u_max) {
                (Some(prev), Some(cur)) if cur > 0.0 && prev > 0.0 => {
                    let ratio = rows[i - 1].dx / rows[i].dx;
                    format!("{:.2}", (prev / cur).ln() / ratio.ln())
                }
                _ => String::from("-"),
            }
        } else {
            String::from("-")
        };
        println!(
            "{:>7} {:>12.6e} {:>14} {:>14.6e} {:>10}",
            rows[i].nx,
            rows[i].dx,
            rows[i].err_u_max.map(|e| format!("{e:.6e}")).unwrap_or_else(|| "-".into()),
            rows[i].deriv_norm,
            order
        );
    }

    let sweep_path = run_dir.join("sweep.csv");
    csvio::write_sweep(&sweep_path, &rows)?;
    println!("files:\n  {}", sweep_path.display());
    Ok(0)
}
