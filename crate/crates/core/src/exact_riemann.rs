//! Exact self-similar solution of the two-state Riemann problem.
//!
//! Both first-family wave curves through a left state lie on
//! `v + p(rho) = v_l + p(rho_l)`, and the second family is a contact moving
//! with the flow. The intermediate state therefore has `v* = v_r` and `rho*`
//! solving `p(rho*) = v_l + p_l - v_r`. A shock appears when `v_r < v_l`
//! (compression, `rho* > rho_l`) and a rarefaction fan when `v_r > v_l`.

use crate::eos::{EosParams, State};
use crate::error::{Error, Result};
use crate::roots::bisect_increasing;

/// Position of the right state relative to the wave curves through the
/// left state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    /// `v_r < v_l`: shock then contact.
    RegionI,
    /// `v_r > v_l`: rarefaction then contact.
    RegionII,
    /// `v_r = v_l`: at most a contact.
    Coincident,
}

pub fn classify(left: State, right: State) -> Region {
    if right.v < left.v {
        Region::RegionI
    } else if right.v > left.v {
        Region::RegionII
    } else {
        Region::Coincident
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolutionKind {
    Constant,
    /// Equal velocities, different densities: a lone contact.
    Contact,
    ShockContact,
    RarefactionContact,
}

/// The first-family wave of a solution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FirstWave {
    Shock { speed: f64 },
    Rarefaction { head: f64, tail: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RiemannSolution {
    pub kind: SolutionKind,
    pub left: State,
    pub right: State,
    /// Intermediate state between the first wave and the contact.
    pub star: Option<State>,
    pub first_wave: Option<FirstWave>,
    /// Speed of the contact, equal to `right.v`.
    pub contact_speed: f64,
    /// `v_l + p(rho_l)`, shared by every state left of the contact.
    pub invariant: f64,
}

impl RiemannSolution {
    /// Shock speed `sigma1`, if the first wave is a shock.
    pub fn shock_speed(&self) -> Option<f64> {
        match self.first_wave {
            Some(FirstWave::Shock { speed }) => Some(speed),
            _ => None,
        }
    }

    /// `(head, tail)` speeds of the fan, if the first wave is a rarefaction.
    pub fn fan(&self) -> Option<(f64, f64)> {
        match self.first_wave {
            Some(FirstWave::Rarefaction { head, tail }) => Some((head, tail)),
            _ => None,
        }
    }

    /// Slowest and fastest signal speeds present in the solution.
    pub fn speed_range(&self) -> (f64, f64) {
        let slowest = match self.first_wave {
            Some(FirstWave::Shock { speed }) => speed,
            Some(FirstWave::Rarefaction { head, .. }) => head,
            None => self.contact_speed,
        };
        (slowest, self.contact_speed)
    }
}

/// Density on the first-family wave curve through `left` whose velocity is
/// `v_star`.
pub fn solve_star_density(eos: &EosParams, left: State, v_star: f64) -> Result<f64> {
    eos.check_state(left)?;
    if !v_star.is_finite() {
        return Err(Error::InvalidState {
            rho: f64::NAN,
            v: v_star,
            reason: "target velocity must be finite",
        });
    }
    if v_star == left.v {
        return Ok(left.rho);
    }
    let p_left = eos.pressure_unchecked(left.rho);
    let target = left.v + p_left - v_star;
    let tol = 1e-12 * target.abs().max(1.0);
    let p = |rho: f64| eos.pressure_unchecked(rho);
    let (min, max) = eos.density_bounds();

    if v_star < left.v {
        // compressive branch, rho* in (rho_l, 1/a)
        let mut hi = if max.is_finite() && max < f64::MAX {
            max
        } else {
            2.0 * left.rho
        };
        if eos.excluded_volume() == 0.0 {
            while p(hi) < target && hi < 1e150 {
                hi *= 2.0;
            }
        }
        if p(hi) < target {
            return Err(if eos.pressure_scale() == 0.0 {
                Error::DeltaShockRegime { target }
            } else {
                Error::NoRoot { target }
            });
        }
        bisect_increasing(p, left.rho, hi, target, tol)
    } else {
        bisect_increasing(p, min, left.rho, target, tol)
    }
}

/// `sigma1 = v_l - rho* (p* - p_l) / (rho* - rho_l)`.
pub fn shock_speed(eos: &EosParams, left: State, star: State) -> Result<f64> {
    eos.check_state(left)?;
    eos.check_state(star)?;
    if star.rho == left.rho {
        return Err(Error::DegenerateShock { rho: left.rho });
    }
    let dp = eos.pressure_unchecked(star.rho) - eos.pressure_unchecked(left.rho);
    Ok(left.v - star.rho * dp / (star.rho - left.rho))
}

/// The alternative form `v* - rho_l (p* - p_l) / (rho* - rho_l)`; agrees
/// with [`shock_speed`] whenever `v + p` matches across the jump.
pub fn shock_speed_from_star(eos: &EosParams, left: State, star: State) -> Result<f64> {
    eos.check_state(left)?;
    eos.check_state(star)?;
    if star.rho == left.rho {
        return Err(Error::DegenerateShock { rho: left.rho });
    }
    let dp = eos.pressure_unchecked(star.rho) - eos.pressure_unchecked(left.rho);
    Ok(star.v - left.rho * dp / (star.rho - left.rho))
}

/// Solves the Riemann problem with initial data `left` for `x < 0` and
/// `right` for `x > 0`.
pub fn solve(eos: &EosParams, left: State, right: State) -> Result<RiemannSolution> {
    for s in [left, right] {
        eos.check_state(s)?;
        if s.v < 0.0 {
            return Err(Error::InvalidState {
                rho: s.rho,
                v: s.v,
                reason: "initial velocity must be >= 0",
            });
        }
    }
    let invariant = left.v + eos.pressure_unchecked(left.rho);
    let base = RiemannSolution {
        kind: SolutionKind::Constant,
        left,
        right,
        star: None,
        first_wave: None,
        contact_speed: right.v,
        invariant,
    };

    match classify(left, right) {
        Region::Coincident if left.rho == right.rho => Ok(base),
        Region::Coincident => Ok(RiemannSolution {
            kind: SolutionKind::Contact,
            star: Some(left),
            ..base
        }),
        Region::RegionI => {
            let rho = solve_star_density(eos, left, right.v)?;
            let star = State::new(rho, right.v);
            let speed = shock_speed(eos, left, star)?;
            Ok(RiemannSolution {
                kind: SolutionKind::ShockContact,
                star: Some(star),
                first_wave: Some(FirstWave::Shock { speed }),
                ..base
            })
        }
        Region::RegionII => {
            let rho = solve_star_density(eos, left, right.v)?;
            let star = State::new(rho, right.v);
            Ok(RiemannSolution {
                kind: SolutionKind::RarefactionContact,
                star: Some(star),
                first_wave: Some(FirstWave::Rarefaction {
                    head: eos.lambda1_unchecked(left),
                    tail: eos.lambda1_unchecked(star),
                }),
                ..base
            })
        }
    }
}

/// Evaluates the solution at `xi = x / t`. At a discontinuity the value
/// just to the right of it is returned.
pub fn sample(eos: &EosParams, sol: &RiemannSolution, xi: f64) -> State {
    if xi >= sol.contact_speed {
        return if sol.kind == SolutionKind::Constant {
            sol.left
        } else {
            sol.right
        };
    }
    let star = match sol.star {
        Some(star) => star,
        None => return sol.left,
    };
    match sol.first_wave {
        None => sol.left,
        Some(FirstWave::Shock { speed }) => {
            if xi < speed {
                sol.left
            } else {
                star
            }
        }
        Some(FirstWave::Rarefaction { head, tail }) => {
            if xi < head {
                sol.left
            } else if xi >= tail {
                star
            } else {
                fan_state(eos, sol, star, xi)
            }
        }
    }
}

/// State inside the fan: the point of `v + p = invariant` where
/// `lambda1 = xi`. `lambda1` decreases with density along the curve.
fn fan_state(eos: &EosParams, sol: &RiemannSolution, star: State, xi: f64) -> State {
    let on_curve = |rho: f64| State::new(rho, sol.invariant - eos.pressure_unchecked(rho));
    let neg_speed = |rho: f64| -eos.lambda1_unchecked(on_curve(rho));
    let tol = 1e-12 * xi.abs().max(1.0);
    let rho = bisect_increasing(neg_speed, star.rho, sol.left.rho, -xi, tol).unwrap_or_else(|_| {
        // rounding pushed xi a hair outside [head, tail); take the nearer end
        if (neg_speed(star.rho) + xi).abs() < (neg_speed(sol.left.rho) + xi).abs() {
            star.rho
        } else {
            sol.left.rho
        }
    });
    on_curve(rho)
}

/// Rankine-Hugoniot residuals of a discontinuity moving at `sigma` between
/// `left` and `right`, with `[q] = q_left - q_right`.
pub fn rh_residual(eos: &EosParams, left: State, right: State, sigma: f64) -> Result<(f64, f64)> {
    let pl = eos.pressure(left.rho)?;
    let pr = eos.pressure(right.rho)?;
    let jump = |ql: f64, qr: f64| ql - qr;
    let mass = -sigma * jump(left.rho, right.rho) + jump(left.rho * left.v, right.rho * right.v);
    let (wl, wr) = (left.rho * (left.v + pl), right.rho * (right.v + pr));
    let momentum = -sigma * jump(wl, wr) + jump(wl * left.v, wr * right.v);
    Ok((mass, momentum))
}
