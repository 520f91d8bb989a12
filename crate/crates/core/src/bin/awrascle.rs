use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use awrascle::exact_riemann::{self, SolutionKind};
use awrascle::harness::{self, ExperimentConfig, HarnessError, Overrides};
use awrascle::limit_analysis;

/// Exact and upwind Riemann solvers for the Aw-Rascle model with an
/// extended Chaplygin pressure.
#[derive(Parser, Debug)]
#[command(name = "awrascle", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Config file (flat key-value with [state], [eos], [grid], [scheme], [sweep]).
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// case-i, case-ii, case-iii or custom.
    #[arg(long, global = true)]
    preset: Option<String>,

    /// Output directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true)]
    n_cells: Option<usize>,

    #[arg(long, global = true)]
    cfl: Option<f64>,

    #[arg(long, global = true)]
    t_end: Option<f64>,

    /// Sweep pairs as `A1:a1,A2:a2,...`.
    #[arg(long, global = true)]
    pairs: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact Riemann solution for each (A, a) pair.
    Solve,
    /// Limit sweep table along the (A, a) pairs.
    Sweep,
    /// Upwind scheme run for each pair.
    Simulate,
    /// Full experiment: summary.csv, profiles, plots.gnu and checks.
    Report {
        /// Profile times; defaults to t_end.
        #[arg(long, value_delimiter = ',')]
        times: Vec<f64>,
    },
}

fn load(cli: &Cli) -> Result<ExperimentConfig, HarnessError> {
    let text = match &cli.config {
        Some(path) => std::fs::read_to_string(path).map_err(|source| HarnessError::Io {
            path: path.clone(),
            source,
        })?,
        None => String::new(),
    };
    let overrides = Overrides {
        preset: cli.preset.clone(),
        n_cells: cli.n_cells,
        cfl: cli.cfl,
        t_end: cli.t_end,
        pairs: cli.pairs.clone(),
        outputs: cli.out.clone(),
    };
    harness::parse_config_with(&text, &overrides)
}

fn solve(cfg: &ExperimentConfig) -> Result<bool, HarnessError> {
    let region = exact_riemann::classify(cfg.left, cfg.right);
    let limit = limit_analysis::classify_limit(cfg.left, cfg.right, cfg.eos.chaplygin, cfg.eos.kappa);
    println!(
        "left = ({}, {}), right = ({}, {}): {region:?}, limit region {}",
        cfg.left.rho,
        cfg.left.v,
        cfg.right.rho,
        cfg.right.v,
        limit.label()
    );
    for i in 0..cfg.pairs.len() {
        let (big_a, a) = cfg.pairs[i];
        let eos = cfg.eos_at(i)?;
        let sol = exact_riemann::solve(&eos, cfg.left, cfg.right)?;
        print!("A = {big_a:e}, a = {a:e}: {:?}", sol.kind);
        if let Some(star) = sol.star {
            print!(", star = ({:.10}, {:.10})", star.rho, star.v);
        }
        match sol.kind {
            SolutionKind::ShockContact => print!(", sigma1 = {:.10}", sol.shock_speed().unwrap_or(f64::NAN)),
            SolutionKind::RarefactionContact => {
                let (head, tail) = sol.fan().unwrap_or((f64::NAN, f64::NAN));
                print!(", fan = [{head:.10}, {tail:.10}]")
            }
            _ => {}
        }
        println!(", sigma2 = {}", sol.contact_speed);
    }
    Ok(true)
}

fn sweep(cfg: &ExperimentConfig) -> Result<bool, HarnessError> {
    let prediction = limit_analysis::predict(cfg.left, cfg.right, cfg.eos.chaplygin, cfg.eos.kappa);
    println!("limit region {}", prediction.region.label());
    if let Some(d) = prediction.delta {
        println!(
            "delta shock: speed {}, weight {} t, pressure limit {}",
            d.speed, d.weight_coefficient, d.pressure_limit
        );
    }
    let base = cfg.eos_at(0)?;
    if cfg.right.v < cfg.left.v {
        println!("{:>12} {:>12} {:>16} {:>14} {:>10} {:>14} {:>14}", "A", "a", "rho*", "sigma1", "sigma2", "A-term", "rho*(s2-s1)");
        let mut ok = true;
        let rows = limit_analysis::sweep(cfg.left, cfg.right, &base, &cfg.pairs)?;
        for row in &rows {
            match row {
                Ok(r) => println!(
                    "{:>12e} {:>12e} {:>16.8} {:>14.8} {:>10} {:>14.8} {:>14.8}",
                    r.pressure_scale, r.excluded_volume, r.rho_star, r.sigma1, r.sigma2, r.eos_term, r.rh_mass
                ),
                Err(f) => {
                    ok = false;
                    println!("{:>12e} {:>12e} failed: {}", f.pressure_scale, f.excluded_volume, f.error)
                }
            }
        }
        let good: Vec<_> = rows.iter().filter_map(|r| r.as_ref().ok().copied()).collect();
        if let Some(trend) = limit_analysis::delta_trend(&good, &prediction, cfg.right) {
            println!("monotone trends: {}", trend.all_monotone());
            ok &= trend.all_monotone();
        }
        Ok(ok)
    } else {
        let rep = limit_analysis::no_vacuum_check(cfg.left, cfg.right, &base, &cfg.pairs)?;
        for (&(big_a, a), rho) in cfg.pairs.iter().zip(&rep.rho_star) {
            println!("{big_a:>12e} {a:>12e} rho* = {rho:.8}");
        }
        println!(
            "no vacuum: {} (infimum {:.8}, limit {:.8}, floor {:.8})",
            rep.holds, rep.infimum, rep.limit_density, rep.floor
        );
        Ok(rep.holds)
    }
}

fn simulate(cfg: &ExperimentConfig, write: bool) -> Result<bool, HarnessError> {
    let report = harness::run_experiment(cfg);
    for r in &report.records {
        match &r.field {
            Ok(f) => println!(
                "A = {:e}, a = {:e}: t = {}, max rho = {:.8}, L1(rho) = {}, steepest dv at x = {:.6}",
                r.pressure_scale,
                r.excluded_volume,
                f.time,
                r.max_density.unwrap_or(f64::NAN),
                r.l1_density_error.map_or("n/a".into(), |e| format!("{e:.6e}")),
                r.steepest_velocity_x.unwrap_or(f64::NAN),
            ),
            Err(e) => println!("A = {:e}, a = {:e}: {e}", r.pressure_scale, r.excluded_volume),
        }
    }
    if write {
        for path in harness::emit_profiles(cfg, &report, &[cfg.scheme.t_end], &cfg.outputs)? {
            println!("wrote {}", path.display());
        }
    }
    Ok(!report.has_hard_failure())
}

fn report(cfg: &ExperimentConfig, times: &[f64]) -> Result<bool, HarnessError> {
    let report = harness::run_experiment(cfg);
    let times = if times.is_empty() { vec![cfg.scheme.t_end] } else { times.to_vec() };
    let summary = harness::write_summary(&report, &cfg.outputs)?;
    println!("wrote {}", summary.display());
    let files = harness::emit_profiles(cfg, &report, &times, &cfg.outputs)?;
    println!("wrote {} profile/plot files to {}", files.len(), cfg.outputs.display());
    println!("{}: {}", report.preset, report.flag());
    for c in &report.checks {
        let tag = match (c.passed, c.gating) {
            (true, _) => "PASS",
            (false, true) => "FAIL",
            (false, false) => "WARN",
        };
        println!("[{tag}] {}: {}", c.name, c.detail);
    }
    if report.has_hard_failure() {
        return Err(HarnessError::Validation {
            field: "run".into(),
            message: "solver or scheme failure (see summary.csv)".into(),
        });
    }
    Ok(report.passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = load(&cli).and_then(|cfg| {
        match &cli.command {
            Command::Solve => solve(&cfg),
            Command::Sweep => sweep(&cfg),
            Command::Simulate => simulate(&cfg, cli.out.is_some()),
            Command::Report { times } => report(&cfg, times),
        }
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
