//! Extended Chaplygin pressure law and the characteristic fields of the
//! Aw-Rascle system
//!
//! ```text
//! rho_t + (rho v)_x = 0
//! (rho (v + p))_t + (rho v (v + p))_x = 0
//! p(rho) = A (rho / (1 - a rho))^Gamma - B / rho^kappa
//! ```
//!
//! In primitive variables the system reads `U_t + J(U) U_x = 0` with
//! `J = [[v, rho], [0, v - rho p']]`, so the eigenvalues are
//! `lambda1 = v - rho p'` (genuinely nonlinear) and `lambda2 = v`
//! (linearly degenerate).

use crate::error::{Error, Result};

/// Smallest density accepted anywhere in the crate.
pub const MIN_DENSITY: f64 = 1e-100;

/// Relative distance kept from the excluded-volume pole `1/a`.
pub const POLE_GUARD: f64 = 1e-12;

/// Constants of the extended Chaplygin pressure law.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EosParams {
    pressure_scale: f64,
    excluded_volume: f64,
    chaplygin: f64,
    gamma: f64,
    kappa: f64,
}

impl EosParams {
    /// Builds a parameter record, rejecting values outside
    /// `A >= 0`, `a >= 0`, `B > 0`, `1 <= Gamma <= 3`, `0 < kappa <= 1`.
    pub fn new(
        pressure_scale: f64,
        excluded_volume: f64,
        chaplygin: f64,
        gamma: f64,
        kappa: f64,
    ) -> Result<Self> {
        let check = |name, value: f64, ok: bool, reason| {
            if value.is_finite() && ok {
                Ok(())
            } else {
                Err(Error::InvalidParameter {
                    name,
                    value,
                    reason,
                })
            }
        };
        check("A", pressure_scale, pressure_scale >= 0.0, "must be >= 0")?;
        check("a", excluded_volume, excluded_volume >= 0.0, "must be >= 0")?;
        check("B", chaplygin, chaplygin > 0.0, "must be > 0")?;
        check(
            "Gamma",
            gamma,
            (1.0..=3.0).contains(&gamma),
            "must lie in [1, 3]",
        )?;
        check(
            "kappa",
            kappa,
            kappa > 0.0 && kappa <= 1.0,
            "must lie in (0, 1]",
        )?;
        Ok(Self {
            pressure_scale,
            excluded_volume,
            chaplygin,
            gamma,
            kappa,
        })
    }

    /// Same law with a different `(A, a)` pair.
    pub fn with_pair(&self, pressure_scale: f64, excluded_volume: f64) -> Result<Self> {
        Self::new(
            pressure_scale,
            excluded_volume,
            self.chaplygin,
            self.gamma,
            self.kappa,
        )
    }

    /// `A`
    pub fn pressure_scale(&self) -> f64 {
        self.pressure_scale
    }

    /// `a`
    pub fn excluded_volume(&self) -> f64 {
        self.excluded_volume
    }

    /// `B`
    pub fn chaplygin(&self) -> f64 {
        self.chaplygin
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    /// Jam density `1/a`; infinite when `a = 0`.
    pub fn max_density(&self) -> f64 {
        if self.excluded_volume > 0.0 {
            1.0 / self.excluded_volume
        } else {
            f64::INFINITY
        }
    }

    /// Inclusive bounds of the guarded density domain.
    pub fn density_bounds(&self) -> (f64, f64) {
        let upper = if self.excluded_volume > 0.0 {
            self.max_density() * (1.0 - POLE_GUARD)
        } else {
            f64::MAX
        };
        (MIN_DENSITY, upper)
    }

    pub fn check_density(&self, rho: f64) -> Result<()> {
        let (min, max) = self.density_bounds();
        if rho.is_finite() && rho >= min && rho <= max {
            Ok(())
        } else {
            Err(Error::Domain { rho, min, max })
        }
    }

    pub fn check_state(&self, s: State) -> Result<()> {
        if !s.v.is_finite() {
            return Err(Error::InvalidState {
                rho: s.rho,
                v: s.v,
                reason: "velocity must be finite",
            });
        }
        self.check_density(s.rho)
    }

    /// `A (rho / (1 - a rho))^Gamma`, the van der Waals part of the pressure.
    pub fn excluded_volume_term(&self, rho: f64) -> f64 {
        if self.pressure_scale == 0.0 {
            return 0.0;
        }
        self.pressure_scale * (rho / (1.0 - self.excluded_volume * rho)).powf(self.gamma)
    }

    /// `p(rho)`
    pub fn pressure(&self, rho: f64) -> Result<f64> {
        self.check_density(rho)?;
        Ok(self.pressure_unchecked(rho))
    }

    pub(crate) fn pressure_unchecked(&self, rho: f64) -> f64 {
        self.excluded_volume_term(rho) - self.chaplygin / rho.powf(self.kappa)
    }

    /// `p'(rho)`, strictly positive on the admissible domain.
    pub fn pressure_derivative(&self, rho: f64) -> Result<f64> {
        self.check_density(rho)?;
        Ok(self.pressure_derivative_unchecked(rho))
    }

    pub(crate) fn pressure_derivative_unchecked(&self, rho: f64) -> f64 {
        let (big_a, a, gamma, kappa) = (
            self.pressure_scale,
            self.excluded_volume,
            self.gamma,
            self.kappa,
        );
        let repulsive = if big_a == 0.0 {
            0.0
        } else {
            gamma * big_a * rho.powf(gamma - 1.0) / (1.0 - a * rho).powf(gamma + 1.0)
        };
        repulsive + kappa * self.chaplygin / rho.powf(kappa + 1.0)
    }

    /// `d lambda1 / d rho` along the first-family wave curve `v + p = const`.
    ///
    /// Equals `-2 p' - rho p''`; never positive.
    pub fn rarefaction_slope(&self, rho: f64) -> Result<f64> {
        self.check_density(rho)?;
        let (big_a, a, gamma, kappa) = (
            self.pressure_scale,
            self.excluded_volume,
            self.gamma,
            self.kappa,
        );
        let repulsive = if big_a == 0.0 {
            0.0
        } else {
            (gamma * gamma + gamma) * big_a * rho.powf(gamma - 1.0)
                / (1.0 - a * rho).powf(gamma + 2.0)
        };
        Ok(-repulsive + (kappa * kappa - kappa) * self.chaplygin / rho.powf(kappa + 1.0))
    }

    /// First characteristic speed `v - rho p'`.
    pub fn lambda1(&self, s: State) -> Result<f64> {
        self.check_state(s)?;
        Ok(self.lambda1_unchecked(s))
    }

    pub(crate) fn lambda1_unchecked(&self, s: State) -> f64 {
        s.v - s.rho * self.pressure_derivative_unchecked(s.rho)
    }

    /// Second characteristic speed, the flow velocity.
    pub fn lambda2(&self, s: State) -> f64 {
        s.v
    }

    /// Riemann invariant of the first family, `v + p(rho)`.
    pub fn riemann_invariant(&self, s: State) -> Result<f64> {
        Ok(s.v + self.pressure(s.rho)?)
    }
}

/// A `(density, velocity)` pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct State {
    pub rho: f64,
    pub v: f64,
}

impl State {
    pub const fn new(rho: f64, v: f64) -> Self {
        Self { rho, v }
    }

    /// Validates user-supplied initial data: positive density inside the
    /// domain of `eos`, finite nonnegative velocity.
    pub fn initial(eos: &EosParams, rho: f64, v: f64) -> Result<Self> {
        let s = Self { rho, v };
        eos.check_state(s)?;
        if v < 0.0 {
            return Err(Error::InvalidState {
                rho,
                v,
                reason: "initial velocity must be >= 0",
            });
        }
        Ok(s)
    }
}
