//! Behaviour of the Riemann solution as `a, A -> 0`.
//!
//! In the limit the pressure reduces to `-B / rho^kappa` and the wave curve
//! through the left state, `v = B/rho^kappa + v_l - B/rho_l^kappa`, has the
//! horizontal asymptote `v = v_l - B/rho_l^kappa`. Right states below it
//! (region Ia) produce a delta shock on `x = v_r t` carrying mass
//! `rho_l (v_l - v_r) t`; between it and `v_l` (region Ib) the intermediate
//! density stays bounded; above `v_l` (region II) there is no vacuum.
//!
//! The limits themselves are not computable, so the checks here evaluate
//! the exact solution along a user-supplied sequence of `(A, a)` pairs and
//! look at the trend.

use rayon::prelude::*;

use crate::eos::{EosParams, State};
use crate::error::{Error, Result};
use crate::exact_riemann::{self, SolutionKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimitRegion {
    /// `v_r <= v_l - B/rho_l^kappa`: delta shock in the limit.
    Ia,
    /// `v_l - B/rho_l^kappa < v_r < v_l`: bounded shock plus contact.
    Ib,
    /// `v_r >= v_l`: rarefaction plus contact, no vacuum.
    II,
}

impl LimitRegion {
    pub fn label(self) -> &'static str {
        match self {
            LimitRegion::Ia => "Ia",
            LimitRegion::Ib => "Ib",
            LimitRegion::II => "II",
        }
    }
}

/// Velocity of the asymptote `v_l - B / rho_l^kappa`.
pub fn asymptote_velocity(left: State, chaplygin: f64, kappa: f64) -> f64 {
    left.v - chaplygin / left.rho.powf(kappa)
}

pub fn classify_limit(left: State, right: State, chaplygin: f64, kappa: f64) -> LimitRegion {
    if right.v >= left.v {
        LimitRegion::II
    } else if right.v <= asymptote_velocity(left, chaplygin, kappa) {
        LimitRegion::Ia
    } else {
        LimitRegion::Ib
    }
}

/// Parameters of the limiting delta shock.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaShock {
    /// Propagation speed, `v_r`.
    pub speed: f64,
    /// `rho_l (v_l - v_r)`; the mass carried at time `t` is this times `t`.
    pub weight_coefficient: f64,
    /// Limit of `A (rho*/(1 - a rho*))^Gamma`, `v_l - v_r - B/rho_l^kappa`.
    pub pressure_limit: f64,
}

impl DeltaShock {
    pub fn weight(&self, t: f64) -> f64 {
        self.weight_coefficient * t
    }

    pub fn position(&self, t: f64) -> f64 {
        self.speed * t
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitPrediction {
    pub region: LimitRegion,
    /// Present only in region Ia.
    pub delta: Option<DeltaShock>,
    /// Density of the step part left of the delta support.
    pub step_left: f64,
    pub step_right: f64,
}

impl LimitPrediction {
    /// Limiting velocity at `(x, t)` for region Ia data.
    pub fn velocity(&self, left: State, right: State, x: f64, t: f64) -> Option<f64> {
        let delta = self.delta?;
        Some(if x < delta.position(t) { left.v } else { right.v })
    }
}

/// Limit prediction; depends only on the initial states, `B` and `kappa`.
pub fn predict(left: State, right: State, chaplygin: f64, kappa: f64) -> LimitPrediction {
    let region = classify_limit(left, right, chaplygin, kappa);
    let delta = (region == LimitRegion::Ia).then(|| DeltaShock {
        speed: right.v,
        weight_coefficient: left.rho * (left.v - right.v),
        pressure_limit: left.v - right.v - chaplygin / left.rho.powf(kappa),
    });
    LimitPrediction {
        region,
        delta,
        step_left: left.rho,
        step_right: right.rho,
    }
}

/// Exact shock-plus-contact solution at one `(A, a)` pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub pressure_scale: f64,
    pub excluded_volume: f64,
    pub rho_star: f64,
    pub sigma1: f64,
    pub sigma2: f64,
    /// `A (rho*/(1 - a rho*))^Gamma`
    pub eos_term: f64,
    /// `rho* (sigma2 - sigma1)`, the mass per unit time between the waves.
    pub rh_mass: f64,
}

impl SweepRow {
    /// Right-hand side of the mass balance summed over both waves,
    /// `sigma2 rho_r - sigma1 rho_l + rho_l v_l - rho_r v_r`.
    pub fn mass_balance(&self, left: State, right: State) -> f64 {
        self.sigma2 * right.rho - self.sigma1 * left.rho + left.rho * left.v
            - right.rho * right.v
    }
}

/// A sweep entry whose solve failed; the sweep carries on past it.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepFailure {
    pub pressure_scale: f64,
    pub excluded_volume: f64,
    pub error: Error,
}

fn check_pairs(pairs: &[(f64, f64)]) -> Result<()> {
    for &(big_a, a) in pairs {
        if !(big_a > 0.0 && a > 0.0 && big_a.is_finite() && a.is_finite()) {
            return Err(Error::Precondition(format!(
                "sweep pairs must be positive, got (A = {big_a}, a = {a})"
            )));
        }
    }
    Ok(())
}

fn sweep_row(base: &EosParams, left: State, right: State, pair: (f64, f64)) -> Result<SweepRow> {
    let eos = base.with_pair(pair.0, pair.1)?;
    let sol = exact_riemann::solve(&eos, left, right)?;
    let (star, sigma1) = match (sol.kind, sol.star, sol.shock_speed()) {
        (SolutionKind::ShockContact, Some(star), Some(s)) => (star, s),
        _ => {
            return Err(Error::Precondition(
                "sweep expects shock-plus-contact data".into(),
            ))
        }
    };
    let sigma2 = sol.contact_speed;
    Ok(SweepRow {
        pressure_scale: pair.0,
        excluded_volume: pair.1,
        rho_star: star.rho,
        sigma1,
        sigma2,
        eos_term: eos.excluded_volume_term(star.rho),
        rh_mass: star.rho * (sigma2 - sigma1),
    })
}

/// Solves the region-I problem for every `(A, a)` pair. Rows come back in
/// input order; a failing pair yields `Err` in its slot.
pub fn sweep(
    left: State,
    right: State,
    base: &EosParams,
    pairs: &[(f64, f64)],
) -> Result<Vec<std::result::Result<SweepRow, SweepFailure>>> {
    if right.v >= left.v {
        return Err(Error::Precondition(
            "sweep requires region-I data (v_r < v_l)".into(),
        ));
    }
    check_pairs(pairs)?;
    Ok(pairs
        .par_iter()
        .map(|&pair| {
            sweep_row(base, left, right, pair).map_err(|error| SweepFailure {
                pressure_scale: pair.0,
                excluded_volume: pair.1,
                error,
            })
        })
        .collect())
}

/// Trend diagnostics of a region-Ia sweep against the limit prediction.
#[derive(Debug, Clone, PartialEq)]
pub struct DeltaTrend {
    pub rho_star_increasing: bool,
    /// `|sigma1 - v_r|` strictly decreasing.
    pub shock_gap_decreasing: bool,
    /// `|sigma2 - sigma1|` strictly decreasing.
    pub wave_gap_decreasing: bool,
    /// `|eos_term - pressure_limit|` strictly decreasing.
    pub eos_term_converging: bool,
    /// `|rh_mass - weight_coefficient|` strictly decreasing.
    pub rh_mass_converging: bool,
    pub final_shock_gap: f64,
    pub final_eos_term_error: f64,
    pub final_rh_mass_error: f64,
    /// `|sigma2 - sigma1|` at the last row over its value at the first.
    pub wave_gap_ratio: f64,
}

impl DeltaTrend {
    pub fn all_monotone(&self) -> bool {
        self.rho_star_increasing
            && self.shock_gap_decreasing
            && self.wave_gap_decreasing
            && self.eos_term_converging
            && self.rh_mass_converging
    }
}

fn strictly_decreasing(xs: &[f64]) -> bool {
    xs.windows(2).all(|w| w[1] < w[0])
}

/// Evaluates the monotone trends expected along a region-Ia sweep. Needs
/// at least two rows and a delta prediction.
pub fn delta_trend(rows: &[SweepRow], prediction: &LimitPrediction, right: State) -> Option<DeltaTrend> {
    let delta = prediction.delta?;
    if rows.len() < 2 {
        return None;
    }
    let rho: Vec<f64> = rows.iter().map(|r| r.rho_star).collect();
    let shock_gap: Vec<f64> = rows.iter().map(|r| (r.sigma1 - right.v).abs()).collect();
    let wave_gap: Vec<f64> = rows.iter().map(|r| (r.sigma2 - r.sigma1).abs()).collect();
    let eos_err: Vec<f64> = rows
        .iter()
        .map(|r| (r.eos_term - delta.pressure_limit).abs())
        .collect();
    let mass_err: Vec<f64> = rows
        .iter()
        .map(|r| (r.rh_mass - delta.weight_coefficient).abs())
        .collect();
    let last = rows.len() - 1;
    Some(DeltaTrend {
        rho_star_increasing: rho.windows(2).all(|w| w[1] > w[0]),
        shock_gap_decreasing: strictly_decreasing(&shock_gap),
        wave_gap_decreasing: strictly_decreasing(&wave_gap),
        eos_term_converging: strictly_decreasing(&eos_err),
        rh_mass_converging: strictly_decreasing(&mass_err),
        final_shock_gap: shock_gap[last],
        final_eos_term_error: eos_err[last],
        final_rh_mass_error: mass_err[last],
        wave_gap_ratio: wave_gap[last] / wave_gap[0],
    })
}

/// Outcome of the no-vacuum check along a region-II sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct NoVacuumReport {
    pub holds: bool,
    /// Smallest intermediate density observed over the sweep.
    pub infimum: f64,
    /// Intermediate density under the limiting law `p = -B/rho^kappa`.
    pub limit_density: f64,
    /// Positive floor the infimum is compared against.
    pub floor: f64,
    pub rho_star: Vec<f64>,
}

/// Intermediate density of the limiting problem, `p = -B/rho^kappa`, for
/// regions Ib and II:
/// `(B / (v_r - v_l + B/rho_l^kappa))^(1/kappa)`.
pub fn limit_star_density(left: State, right: State, chaplygin: f64, kappa: f64) -> f64 {
    let denom = right.v - left.v + chaplygin / left.rho.powf(kappa);
    (chaplygin / denom).powf(1.0 / kappa)
}

/// Checks that the intermediate density of region-II data stays above a
/// positive floor along the sweep. The floor is half the intermediate
/// density of the limiting Chaplygin problem.
pub fn no_vacuum_check(
    left: State,
    right: State,
    base: &EosParams,
    pairs: &[(f64, f64)],
) -> Result<NoVacuumReport> {
    if right.v < left.v {
        return Err(Error::Precondition(
            "no-vacuum check requires region-II data (v_r >= v_l)".into(),
        ));
    }
    check_pairs(pairs)?;
    let limit_density = limit_star_density(left, right, base.chaplygin(), base.kappa());
    let rho_star = pairs
        .par_iter()
        .map(|&(big_a, a)| {
            let eos = base.with_pair(big_a, a)?;
            exact_riemann::solve_star_density(&eos, left, right.v)
        })
        .collect::<Result<Vec<f64>>>()?;
    let infimum = rho_star.iter().copied().fold(f64::INFINITY, f64::min);
    let floor = 0.5 * limit_density;
    Ok(NoVacuumReport {
        holds: infimum.is_finite() && infimum > floor,
        infimum,
        limit_density,
        floor,
        rho_star,
    })
}
