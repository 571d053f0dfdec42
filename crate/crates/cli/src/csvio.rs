//! Deterministic CSV and plot-script emission.
//!
//! All files use `,` separators, `.` decimals, 17 significant digits, a
//! header row, and LF line endings, so identical runs produce byte-identical
//! output.

use crate::error::CliError;
use chemo_core::{DiagnosticsSeries, Grid1D, SimState, SteadyState};
use std::fmt::Write as _;
use std::path::Path;

/// 17 significant digits, scientific notation.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents.as_bytes())
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

/// Final profile: node coordinate, both numeric fields, and (when a
/// reference steady state exists) the exact pair on the same nodes. The
/// exact columns are left empty otherwise.
pub fn write_profile(
    path: &Path,
    state: &SimState,
    grid: &Grid1D,
    reference: Option<&SteadyState>,
) -> Result<(), CliError> {
    let mut out = String::from("x,u_num,v_num,u_exact,v_exact\n");
    for i in 0..grid.node_count() {
        let x = grid.x(i);
        let exact = match reference {
            Some(ss) => {
                let (u, v) = ss.eval(x)?;
                (fmt_float(u), fmt_float(v))
            }
            None => (String::new(), String::new()),
        };
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            fmt_float(x),
            fmt_float(state.u[i]),
            fmt_float(state.v[i]),
            exact.0,
            exact.1
        );
    }
    write_atomic(path, &out)
}

/// Time series of the run diagnostics; the energy and error columns are
/// empty when the run had no reference steady state.
pub fn write_series(path: &Path, series: &DiagnosticsSeries) -> Result<(), CliError> {
    let mut out = String::from("t,energy,err_u_l2,err_v_l2,deriv_norm\n");
    let tracked = series.has_reference_track();
    for (i, t) in series.times.iter().enumerate() {
        let (energy, eu, ev) = if tracked {
            (
                fmt_float(series.energy[i]),
                fmt_float(series.err_u_l2[i]),
                fmt_float(series.err_v_l2[i]),
            )
        } else {
            (String::new(), String::new(), String::new())
        };
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            fmt_float(*t),
            energy,
            eu,
            ev,
            fmt_float(series.deriv_norm[i])
        );
    }
    write_atomic(path, &out)
}

/// One row per sweep resolution.
pub struct SweepRow {
    pub nx: usize,
    pub dx: f64,
    pub err_u_max: Option<f64>,
    pub err_v_max: Option<f64>,
    pub err_u_l2: Option<f64>,
    pub err_v_l2: Option<f64>,
    pub deriv_norm: f64,
}

pub fn write_sweep(path: &Path, rows: &[SweepRow]) -> Result<(), CliError> {
    let opt = |v: Option<f64>| v.map(fmt_float).unwrap_or_default();
    let mut out = String::from("nx,dx,err_u_max,err_v_max,err_u_l2,err_v_l2,deriv_norm\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.nx,
            fmt_float(r.dx),
            opt(r.err_u_max),
            opt(r.err_v_max),
            opt(r.err_u_l2),
            opt(r.err_v_l2),
            fmt_float(r.deriv_norm)
        );
    }
    write_atomic(path, &out)
}

/// A gnuplot script referencing the two CSVs next to it. The tool never
/// renders anything itself.
pub fn write_plot_script(path: &Path, has_reference: bool) -> Result<(), CliError> {
    let mut out = String::from(
        "# render with: gnuplot plot.gnuplot\n\
         set datafile separator ','\n\
         set key autotitle columnhead\n\
         set terminal pngcairo size 1280,480\n\
         set output 'profile.png'\n\
         set multiplot layout 1,2\n\
         set xlabel 'x'\n",
    );
    if has_reference {
        out.push_str(
            "plot 'profile.csv' using 1:2 with lines lw 2 title 'u numeric', \\\n\
             \x20    'profile.csv' using 1:4 every 20 with points pt 6 ps 0.6 title 'u steady'\n\
             plot 'profile.csv' using 1:3 with lines lw 2 title 'v numeric', \\\n\
             \x20    'profile.csv' using 1:5 every 20 with points pt 6 ps 0.6 title 'v steady'\n",
        );
    } else {
        out.push_str(
            "plot 'profile.csv' using 1:2 with lines lw 2 title 'u numeric'\n\
             plot 'profile.csv' using 1:3 with lines lw 2 title 'v numeric'\n",
        );
    }
    out.push_str(
        "unset multiplot\n\
         set output 'series.png'\n\
         set xlabel 't'\n\
         set logscale y\n",
    );
    if has_reference {
        out.push_str("plot 'series.csv' using 1:2 with lines lw 2 title 'energy'\n");
    } else {
        out.push_str("plot 'series.csv' using 1:5 with lines lw 2 title 'deriv norm'\n");
    }
    write_atomic(path, &out)
}
