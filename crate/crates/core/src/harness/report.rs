use rayon::prelude::*;

use crate::eos::{EosParams, State};
use crate::exact_riemann::{self, RiemannSolution};
use crate::limit_analysis::{
    self, LimitPrediction, LimitRegion, NoVacuumReport, SweepRow,
};
use crate::upwind_scheme::{self, Field};

use super::config::{EosBase, ExperimentConfig, Preset};

/// Everything computed for one `(A, a)` pair.
#[derive(Debug, Clone)]
pub struct PairRecord {
    pub index: usize,
    pub pressure_scale: f64,
    pub excluded_volume: f64,
    pub solution: Result<RiemannSolution, crate::Error>,
    /// Present for shock-plus-contact solutions.
    pub sweep_row: Option<SweepRow>,
    /// Relative residual of `rho*(s2 - s1) = s2 rho_r - s1 rho_l + rho_l v_l - rho_r v_r`.
    pub mass_identity_residual: Option<f64>,
    pub field: Result<Field, crate::Error>,
    pub max_density: Option<f64>,
    pub l1_density_error: Option<f64>,
    pub steepest_velocity_x: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Diagnostics are reported but do not decide the run's outcome.
    pub gating: bool,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub preset: Preset,
    pub left: State,
    pub right: State,
    pub eos: EosBase,
    pub t_end: f64,
    pub prediction: LimitPrediction,
    pub no_vacuum: Option<NoVacuumReport>,
    pub records: Vec<PairRecord>,
    pub checks: Vec<Check>,
}

impl RunReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed || !c.gating)
    }

    /// A solve or scheme run failed outright.
    pub fn has_hard_failure(&self) -> bool {
        self.records
            .iter()
            .any(|r| r.solution.is_err() || r.field.is_err())
    }

    /// Status label for the summary.
    pub fn flag(&self) -> &'static str {
        match self.prediction.region {
            LimitRegion::Ia => "delta shock forming",
            LimitRegion::Ib => "bounded intermediate density",
            LimitRegion::II => "no vacuum",
        }
    }

    pub fn rows(&self) -> Vec<SweepRow> {
        self.records.iter().filter_map(|r| r.sweep_row).collect()
    }
}

/// Exact solution at `(x, t)`; the initial data at `t = 0`.
pub fn exact_state(eos: &EosParams, sol: &RiemannSolution, x: f64, t: f64) -> State {
    if t <= 0.0 {
        if x < 0.0 {
            sol.left
        } else {
            sol.right
        }
    } else {
        exact_riemann::sample(eos, sol, x / t)
    }
}

fn run_pair(cfg: &ExperimentConfig, index: usize) -> PairRecord {
    let (pressure_scale, excluded_volume) = cfg.pairs[index];
    let eos = cfg.eos_at(index);
    let solution = eos
        .as_ref()
        .map_err(Clone::clone)
        .and_then(|eos| exact_riemann::solve(eos, cfg.left, cfg.right));
    let field = eos
        .as_ref()
        .map_err(Clone::clone)
        .and_then(|eos| upwind_scheme::run(eos, cfg.left, cfg.right, cfg.grid, &cfg.scheme));

    let sweep_row = match (&eos, &solution) {
        (Ok(eos), Ok(sol)) => match (sol.star, sol.shock_speed()) {
            (Some(star), Some(sigma1)) => Some(SweepRow {
                pressure_scale,
                excluded_volume,
                rho_star: star.rho,
                sigma1,
                sigma2: sol.contact_speed,
                eos_term: eos.excluded_volume_term(star.rho),
                rh_mass: star.rho * (sol.contact_speed - sigma1),
            }),
            _ => None,
        },
        _ => None,
    };
    let mass_identity_residual = sweep_row.map(|row| {
        let rhs = row.mass_balance(cfg.left, cfg.right);
        (row.rh_mass - rhs).abs() / row.rh_mass.abs().max(f64::MIN_POSITIVE)
    });

    let (max_density, l1_density_error, steepest_velocity_x) = match (&eos, &solution, &field) {
        (Ok(eos), Ok(sol), Ok(f)) => {
            let l1 = upwind_scheme::l1_density_error(f, |x| exact_state(eos, sol, x, f.time).rho);
            (
                Some(f.max_density()),
                Some(l1),
                Some(f.steepest_velocity_gradient()),
            )
        }
        (_, _, Ok(f)) => (Some(f.max_density()), None, Some(f.steepest_velocity_gradient())),
        _ => (None, None, None),
    };

    PairRecord {
        index,
        pressure_scale,
        excluded_volume,
        solution,
        sweep_row,
        mass_identity_residual,
        field,
        max_density,
        l1_density_error,
        steepest_velocity_x,
    }
}

fn strictly_increasing(xs: &[f64]) -> bool {
    xs.windows(2).all(|w| w[1] > w[0])
}

fn strictly_decreasing(xs: &[f64]) -> bool {
    xs.windows(2).all(|w| w[1] < w[0])
}

fn fmt_list(xs: &[f64]) -> String {
    let items: Vec<String> = xs.iter().map(|x| format!("{x:.6}")).collect();
    format!("[{}]", items.join(", "))
}

/// Runs the exact solver, the limit analysis and the upwind scheme for
/// every pair and evaluates the checks that apply to the data's region.
pub fn run_experiment(cfg: &ExperimentConfig) -> RunReport {
    let records: Vec<PairRecord> = (0..cfg.pairs.len())
        .into_par_iter()
        .map(|i| run_pair(cfg, i))
        .collect();
    let prediction = limit_analysis::predict(cfg.left, cfg.right, cfg.eos.chaplygin, cfg.eos.kappa);

    let mut checks = Vec::new();
    let mut push = |name: &str, passed: bool, gating: bool, detail: String| {
        checks.push(Check {
            name: name.to_string(),
            passed,
            gating,
            detail,
        })
    };
    let mut check = |name: &str, passed: bool, detail: String| push(name, passed, true, detail);

    let failed_solves: Vec<usize> = records.iter().filter(|r| r.solution.is_err()).map(|r| r.index).collect();
    check(
        "exact solve at every pair",
        failed_solves.is_empty(),
        format!("failed pairs: {failed_solves:?}"),
    );
    let failed_runs: Vec<String> = records
        .iter()
        .filter_map(|r| r.field.as_ref().err().map(|e| format!("{}: {e}", r.index)))
        .collect();
    check(
        "scheme run at every pair",
        failed_runs.is_empty(),
        format!("failures: {failed_runs:?}"),
    );

    let rows: Vec<SweepRow> = records.iter().filter_map(|r| r.sweep_row).collect();
    if prediction.region != LimitRegion::II {
        check(
            "contact speed equals v_r",
            rows.iter().all(|r| r.sigma2 == cfg.right.v),
            format!("sigma2 = {}", fmt_list(&rows.iter().map(|r| r.sigma2).collect::<Vec<_>>())),
        );
        let worst = records
            .iter()
            .filter_map(|r| r.mass_identity_residual)
            .fold(0.0, f64::max);
        check(
            "mass balance identity across both waves",
            worst <= 1e-9,
            format!("max relative residual {worst:.3e}"),
        );
    }

    let no_vacuum = match prediction.region {
        LimitRegion::Ia => {
            let delta = prediction.delta.expect("region Ia carries a delta");
            let rho: Vec<f64> = rows.iter().map(|r| r.rho_star).collect();
            check(
                "intermediate density strictly increasing",
                rows.len() == cfg.pairs.len() && strictly_increasing(&rho),
                format!("rho* = {}", fmt_list(&rho)),
            );
            let gap: Vec<f64> = rows.iter().map(|r| (r.sigma1 - cfg.right.v).abs()).collect();
            check(
                "shock speed approaches v_r",
                strictly_decreasing(&gap),
                format!("|sigma1 - v_r| = {}", fmt_list(&gap)),
            );
            let eos_err: Vec<f64> = rows.iter().map(|r| (r.eos_term - delta.pressure_limit).abs()).collect();
            check(
                "excluded-volume pressure approaches its limit",
                strictly_decreasing(&eos_err),
                format!("|A term - {}| = {}", delta.pressure_limit, fmt_list(&eos_err)),
            );
            let mass_err: Vec<f64> = rows.iter().map(|r| (r.rh_mass - delta.weight_coefficient).abs()).collect();
            check(
                "mass between the waves approaches the delta weight",
                strictly_decreasing(&mass_err),
                format!("|rho*(s2-s1) - {}| = {}", delta.weight_coefficient, fmt_list(&mass_err)),
            );
            let max_rho: Vec<f64> = records.iter().filter_map(|r| r.max_density).collect();
            check(
                "numerical peak density strictly increasing",
                max_rho.len() == cfg.pairs.len() && strictly_increasing(&max_rho),
                format!("max rho = {}", fmt_list(&max_rho)),
            );
            let target = delta.position(cfg.scheme.t_end);
            let tol = 3.0 * cfg.grid.dx();
            let last = records.last().and_then(|r| r.steepest_velocity_x);
            // The primitive-variable scheme is not conservative, so strong
            // shocks can travel at the wrong speed. Reported, not gated.
            push(
                "velocity step sits on the delta support",
                last.is_some_and(|x| (x - target).abs() <= tol),
                false,
                format!("steepest gradient at {last:?}, expected {target} +/- {tol}"),
            );
            None
        }
        LimitRegion::Ib => {
            let bound = limit_analysis::limit_star_density(cfg.left, cfg.right, cfg.eos.chaplygin, cfg.eos.kappa);
            let rho: Vec<f64> = rows.iter().map(|r| r.rho_star).collect();
            check(
                "bounded intermediate density",
                rows.len() == cfg.pairs.len() && rho.iter().all(|&r| r < bound),
                format!("rho* = {} below the Chaplygin limit {bound:.6}", fmt_list(&rho)),
            );
            let ia_formula = cfg.left.v - cfg.right.v - cfg.eos.chaplygin / cfg.left.rho.powf(cfg.eos.kappa);
            check(
                "excluded-volume pressure stays positive",
                rows.iter().all(|r| r.eos_term > 0.0) && ia_formula < 0.0,
                format!("delta-regime limit formula gives {ia_formula:.6}"),
            );
            None
        }
        LimitRegion::II => {
            let base = cfg.eos_at(0);
            match base.and_then(|b| limit_analysis::no_vacuum_check(cfg.left, cfg.right, &b, &cfg.pairs)) {
                Ok(rep) => {
                    check(
                        "no vacuum",
                        rep.holds,
                        format!("infimum rho* = {:.6}, floor {:.6}", rep.infimum, rep.floor),
                    );
                    Some(rep)
                }
                Err(e) => {
                    check("no vacuum", false, e.to_string());
                    None
                }
            }
        }
    };

    RunReport {
        preset: cfg.preset,
        left: cfg.left,
        right: cfg.right,
        eos: cfg.eos,
        t_end: cfg.scheme.t_end,
        prediction,
        no_vacuum,
        records,
        checks,
    }
}
