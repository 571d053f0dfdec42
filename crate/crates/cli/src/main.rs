//! `chemo` — steady states and semi-implicit simulation of a 1-D
//! logarithmic-chemotaxis system on the unit interval.
//!
//! Subcommands: `derive` (boundary data from a family and u(0)),
//! `validate` (which family admits given boundary data), `run` (time
//! integration with CSV export), `sweep` (the same run over several grid
//! resolutions).
//!
//! Exit codes: 0 success, 2 validation failure, 3 divergence, 4 I/O or
//! configuration error.

mod commands;
mod config;
mod csvio;
mod error;

use clap::{Args, Parser, Subcommand};
use commands::Overrides;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "chemo",
    version,
    about = "Explicit steady states and a semi-implicit solver for a 1-D logarithmic-chemotaxis system"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SourceArgs {
    /// Compiled-in experiment: power, sec, csc, csch, or undiscovered
    #[arg(long, conflicts_with = "config")]
    preset: Option<String>,
    /// Key-value configuration file (see README for the schema)
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct OverrideArgs {
    /// Interior node count override
    #[arg(long)]
    nx: Option<usize>,
    /// Time step override
    #[arg(long)]
    dt: Option<f64>,
    /// Final time override
    #[arg(long = "t-end")]
    t_end: Option<f64>,
    /// Diagnostics stride override (in steps)
    #[arg(long = "snapshot-every")]
    snapshot_every: Option<usize>,
}

impl OverrideArgs {
    fn to_overrides(&self) -> Overrides {
        Overrides {
            nx: self.nx,
            dt: self.dt,
            t_end: self.t_end,
            snapshot_every: self.snapshot_every,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Derive the admissible boundary data of one family from u(0)
    Derive {
        /// Steady-state family: power, sec, csc, or csch
        #[arg(long)]
        family: String,
        /// Left boundary value of the cell density
        #[arg(long)]
        alpha1: f64,
        /// Diffusion rate
        #[arg(long, default_value_t = 2.0)]
        d: f64,
        /// Chemotactic sensitivity
        #[arg(long, default_value_t = 1.0)]
        chi: f64,
        /// Chemical diffusivity
        #[arg(long, default_value_t = 0.5)]
        eps: f64,
        /// Source strength
        #[arg(long, default_value_t = 1.0)]
        mu: f64,
    },
    /// Check which family (if any) admits the configured boundary data
    Validate {
        #[command(flatten)]
        source: SourceArgs,
    },
    /// Integrate the system and export profile/series CSVs
    Run {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        over: OverrideArgs,
        /// Output root (default: $CHEMO_OUT_DIR, then the current directory)
        #[arg(long = "out-dir")]
        out_dir: Option<PathBuf>,
        /// Also write a gnuplot script next to the CSVs
        #[arg(long = "emit-plot-script")]
        emit_plot_script: bool,
    },
    /// Rerun one experiment over several grid resolutions
    Sweep {
        #[command(flatten)]
        source: SourceArgs,
        /// Comma-separated interior node counts, e.g. 124,249,499
        #[arg(long, value_delimiter = ',', required = true)]
        nx: Vec<usize>,
        /// Time step override (shared by all resolutions)
        #[arg(long)]
        dt: Option<f64>,
        /// Final time override
        #[arg(long = "t-end")]
        t_end: Option<f64>,
        #[arg(long = "out-dir")]
        out_dir: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version are not errors; everything else is a usage problem
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 4,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };

    let result = match &cli.command {
        Command::Derive { family, alpha1, d, chi, eps, mu } => {
            let params = chemo_core::ModelParams { d: *d, chi: *chi, eps: *eps, mu: *mu };
            commands::cmd_derive(family, *alpha1, params)
        }
        Command::Validate { source } => {
            commands::cmd_validate(source.preset.as_deref(), source.config.as_deref())
        }
        Command::Run { source, over, out_dir, emit_plot_script } => commands::cmd_run(
            source.preset.as_deref(),
            source.config.as_deref(),
            &over.to_overrides(),
            out_dir.clone(),
            *emit_plot_script,
        ),
        Command::Sweep { source, nx, dt, t_end, out_dir } => {
            let ov = Overrides { nx: None, dt: *dt, t_end: *t_end, snapshot_every: None };
            commands::cmd_sweep(
                source.preset.as_deref(),
                source.config.as_deref(),
                nx,
                &ov,
                out_dir.clone(),
            )
        }
    };

    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
