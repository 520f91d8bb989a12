use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::upwind_scheme::{self, Field};

use super::config::ExperimentConfig;
use super::report::{exact_state, RunReport};
use super::HarnessError;

pub const PROFILE_HEADER: &str = "x,rho_exact,rho_num,v_exact,v_num";

const SUMMARY_HEADER: &str = "preset,pair,A,a,region,kind,rho_star,v_star,sigma1,sigma2,\
fan_head,fan_tail,eos_term,rh_mass,mass_identity_residual,max_density,l1_rho_error,\
steepest_velocity_x,status";

/// 17 significant digits.
fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

fn write_file(path: &Path, contents: &str) -> Result<(), HarnessError> {
    fs::write(path, contents).map_err(|source| HarnessError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn ensure_dir(dir: &Path) -> Result<(), HarnessError> {
    fs::create_dir_all(dir).map_err(|source| HarnessError::Io {
        path: dir.to_path_buf(),
        source,
    })
}

pub fn summary_csv(report: &RunReport) -> String {
    let mut out = String::from(SUMMARY_HEADER);
    out.push('\n');
    for r in &report.records {
        let (kind, star, fan, status) = match &r.solution {
            Ok(sol) => (
                format!("{:?}", sol.kind),
                sol.star,
                sol.fan(),
                match &r.field {
                    Ok(_) => "ok".to_string(),
                    Err(e) => format!("scheme error: {e}"),
                },
            ),
            Err(e) => (String::new(), None, None, format!("solver error: {e}")),
        };
        let row = r.sweep_row;
        let fields = [
            report.preset.id().to_string(),
            r.index.to_string(),
            num(r.pressure_scale),
            num(r.excluded_volume),
            report.prediction.region.label().to_string(),
            kind,
            opt(star.map(|s| s.rho)),
            opt(star.map(|s| s.v)),
            opt(row.map(|x| x.sigma1)),
            opt(r.solution.as_ref().ok().map(|s| s.contact_speed)),
            opt(fan.map(|f| f.0)),
            opt(fan.map(|f| f.1)),
            opt(row.map(|x| x.eos_term)),
            opt(row.map(|x| x.rh_mass)),
            opt(r.mass_identity_residual),
            opt(r.max_density),
            opt(r.l1_density_error),
            opt(r.steepest_velocity_x),
            format!("\"{}\"", status.replace('"', "'")),
        ];
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

pub fn write_summary(report: &RunReport, dir: &Path) -> Result<PathBuf, HarnessError> {
    ensure_dir(dir)?;
    let path = dir.join("summary.csv");
    write_file(&path, &summary_csv(report))?;
    Ok(path)
}

fn profile_name(pair: usize, t: f64) -> String {
    format!("profile_{pair}_{t}.csv")
}

/// gnuplot script drawing density and velocity (exact lines, numerical
/// points) for every pair and time.
pub fn plot_script(report: &RunReport, times: &[f64]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# {} : (rho_l, v_l) = ({}, {}), (rho_r, v_r) = ({}, {})",
        report.preset, report.left.rho, report.left.v, report.right.rho, report.right.v);
    let _ = writeln!(s, "set datafile separator ','");
    let _ = writeln!(s, "set terminal pngcairo size 1200,450");
    let _ = writeln!(s, "set key top right");
    for r in &report.records {
        if r.solution.is_err() || r.field.is_err() {
            continue;
        }
        for &t in times {
            let csv = profile_name(r.index, t);
            let _ = writeln!(s);
            let _ = writeln!(s, "set output 'profile_{}_{}.png'", r.index, t);
            let _ = writeln!(
                s,
                "set multiplot layout 1,2 title 'A = {}, a = {}, t = {}'",
                r.pressure_scale, r.excluded_volume, t
            );
            let _ = writeln!(s, "set xlabel 'x'; set ylabel 'density'");
            let _ = writeln!(
                s,
                "plot '{csv}' skip 1 using 1:2 with lines title 'exact', '' skip 1 using 1:3 with points pt 7 ps 0.3 title 'upwind'"
            );
            let _ = writeln!(s, "set xlabel 'x'; set ylabel 'velocity'");
            let _ = writeln!(
                s,
                "plot '{csv}' skip 1 using 1:4 with lines title 'exact', '' skip 1 using 1:5 with points pt 7 ps 0.3 title 'upwind'"
            );
            let _ = writeln!(s, "unset multiplot");
        }
    }
    s
}

/// Writes `profile_<pair>_<time>.csv` for every pair and requested time,
/// plus `plots.gnu`. The field stored in the report is reused at `t_end`;
/// other times are recomputed from the initial data.
pub fn emit_profiles(
    cfg: &ExperimentConfig,
    report: &RunReport,
    times: &[f64],
    dir: &Path,
) -> Result<Vec<PathBuf>, HarnessError> {
    ensure_dir(dir)?;
    let mut written = Vec::new();
    for r in &report.records {
        let (Ok(sol), Ok(final_field)) = (&r.solution, &r.field) else {
            continue;
        };
        let eos = cfg.eos_at(r.index)?;
        for &t in times {
            let recomputed;
            let field: &Field = if t == final_field.time {
                final_field
            } else {
                let mut scheme = cfg.scheme;
                scheme.t_end = t;
                recomputed = upwind_scheme::run(&eos, cfg.left, cfg.right, cfg.grid, &scheme)?;
                &recomputed
            };
            let mut csv = String::from(PROFILE_HEADER);
            csv.push('\n');
            for (j, x) in field.grid.centers().enumerate() {
                let exact = exact_state(&eos, sol, x, field.time);
                let _ = writeln!(
                    csv,
                    "{},{},{},{},{}",
                    num(x),
                    num(exact.rho),
                    num(field.rho[j]),
                    num(exact.v),
                    num(field.v[j])
                );
            }
            let path = dir.join(profile_name(r.index, t));
            write_file(&path, &csv)?;
            written.push(path);
        }
    }
    let path = dir.join("plots.gnu");
    write_file(&path, &plot_script(report, times))?;
    written.push(path);
    Ok(written)
}
