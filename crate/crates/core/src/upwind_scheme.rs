//! First-order upwind scheme on the primitive form `U_t + B(U) U_x = 0`,
//! `U = (rho, v)`, using the split coefficient matrix method.
//!
//! `B = R Lambda L` with
//!
//! ```text
//! R = [[1/p', -1/p'], [0, 1]]   Lambda = diag(v, v - rho p')   L = [[p', 1], [0, 1]]
//! ```
//!
//! and the update
//!
//! ```text
//! U_j^{n+1} = U_j^n - dt/dx (B_j^- (U_{j+1} - U_j) + B_j^+ (U_j - U_{j-1}))
//! ```
//!
//! with `B^± = R Lambda^± L`, `Lambda^± = (Lambda ± |Lambda|) / 2`.

use nalgebra::{Matrix2, Vector2};

use crate::eos::{EosParams, State};
use crate::error::{Error, Result};

pub type Mat2 = Matrix2<f64>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    x_min: f64,
    x_max: f64,
    n_cells: usize,
}

impl Grid {
    pub fn new(x_min: f64, x_max: f64, n_cells: usize) -> Result<Self> {
        if !(x_min.is_finite() && x_max.is_finite() && x_min < x_max) {
            return Err(Error::Precondition(format!(
                "grid needs x_min < x_max, got [{x_min}, {x_max}]"
            )));
        }
        if n_cells < 4 {
            return Err(Error::Precondition(format!(
                "grid needs at least 4 cells, got {n_cells}"
            )));
        }
        Ok(Self {
            x_min,
            x_max,
            n_cells,
        })
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn n_cells(&self) -> usize {
        self.n_cells
    }

    pub fn dx(&self) -> f64 {
        (self.x_max - self.x_min) / self.n_cells as f64
    }

    pub fn center(&self, j: usize) -> f64 {
        self.x_min + (j as f64 + 0.5) * self.dx()
    }

    pub fn centers(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n_cells).map(|j| self.center(j))
    }
}

impl Default for Grid {
    fn default() -> Self {
        Self {
            x_min: -1.0,
            x_max: 1.0,
            n_cells: 800,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Field {
    pub grid: Grid,
    pub rho: Vec<f64>,
    pub v: Vec<f64>,
    pub time: f64,
}

impl Field {
    /// Piecewise-constant data with the jump at `x = 0`.
    pub fn riemann(grid: Grid, left: State, right: State) -> Self {
        let (rho, v) = grid
            .centers()
            .map(|x| if x < 0.0 { (left.rho, left.v) } else { (right.rho, right.v) })
            .unzip();
        Self {
            grid,
            rho,
            v,
            time: 0.0,
        }
    }

    pub fn uniform(grid: Grid, s: State) -> Self {
        Self::riemann(grid, s, s)
    }

    pub fn state(&self, j: usize) -> State {
        State::new(self.rho[j], self.v[j])
    }

    pub fn max_density(&self) -> f64 {
        self.rho.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Interface position `x_{j+1/2}` of the largest velocity jump between
    /// neighbouring cells.
    pub fn steepest_velocity_gradient(&self) -> f64 {
        let j = self
            .v
            .windows(2)
            .enumerate()
            .max_by(|a, b| {
                let da = (a.1[1] - a.1[0]).abs();
                let db = (b.1[1] - b.1[0]).abs();
                da.total_cmp(&db)
            })
            .map_or(0, |(j, _)| j);
        self.grid.x_min + (j + 1) as f64 * self.grid.dx()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    /// Zero-gradient ghost cells.
    Outflow,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchemeConfig {
    pub cfl: f64,
    pub t_end: f64,
    pub boundary: Boundary,
    pub max_steps: usize,
}

impl SchemeConfig {
    pub fn new(cfl: f64, t_end: f64, max_steps: usize) -> Result<Self> {
        if !(cfl > 0.0 && cfl <= 1.0) {
            return Err(Error::Precondition(format!("cfl must lie in (0, 1], got {cfl}")));
        }
        if !(t_end.is_finite() && t_end >= 0.0) {
            return Err(Error::Precondition(format!("t_end must be >= 0, got {t_end}")));
        }
        Ok(Self {
            cfl,
            t_end,
            boundary: Boundary::Outflow,
            max_steps,
        })
    }
}

impl Default for SchemeConfig {
    fn default() -> Self {
        Self {
            cfl: 0.5,
            t_end: 0.1,
            boundary: Boundary::Outflow,
            max_steps: 1_000_000,
        }
    }
}

/// `B = [[v, rho], [0, v - rho p']]`
pub fn coefficient_matrix(eos: &EosParams, s: State) -> Result<Mat2> {
    eos.check_state(s)?;
    let dp = eos.pressure_derivative_unchecked(s.rho);
    Ok(Mat2::new(s.v, s.rho, 0.0, s.v - s.rho * dp))
}

/// Factors of `B = R Lambda L`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eigendecomposition {
    pub right: Mat2,
    pub eigenvalues: Vector2<f64>,
    pub left: Mat2,
}

impl Eigendecomposition {
    pub fn lambda(&self) -> Mat2 {
        Mat2::from_diagonal(&self.eigenvalues)
    }

    pub fn reconstruct(&self) -> Mat2 {
        self.right * self.lambda() * self.left
    }

    /// `R f(Lambda) L`
    pub fn apply(&self, f: impl Fn(f64) -> f64) -> Mat2 {
        self.right * Mat2::from_diagonal(&self.eigenvalues.map(f)) * self.left
    }

    /// `|B| = R |Lambda| L`
    pub fn abs(&self) -> Mat2 {
        self.apply(f64::abs)
    }
}

pub fn eigendecomposition(eos: &EosParams, s: State) -> Result<Eigendecomposition> {
    eos.check_state(s)?;
    let dp = eos.pressure_derivative_unchecked(s.rho);
    Ok(Eigendecomposition {
        right: Mat2::new(1.0 / dp, -1.0 / dp, 0.0, 1.0),
        eigenvalues: Vector2::new(s.v, s.v - s.rho * dp),
        left: Mat2::new(dp, 1.0, 0.0, 1.0),
    })
}

/// `(B^+, B^-)`. Each part is built as `R Lambda^± L`, which equals
/// `(B ± |B|) / 2` and vanishes exactly when the opposite-sign
/// eigenvalues are absent.
pub fn split(eos: &EosParams, s: State) -> Result<(Mat2, Mat2)> {
    let dec = eigendecomposition(eos, s)?;
    Ok((dec.apply(|l| l.max(0.0)), dec.apply(|l| l.min(0.0))))
}

/// `cfl dx / max_j max(|lambda1|, |lambda2|)`, or `cfl dx` on a field at rest.
pub fn stable_dt(eos: &EosParams, field: &Field, cfl: f64) -> f64 {
    let max_speed = (0..field.grid.n_cells)
        .map(|j| {
            let s = field.state(j);
            eos.lambda1_unchecked(s).abs().max(s.v.abs())
        })
        .fold(0.0, f64::max);
    let dx = field.grid.dx();
    if max_speed > 0.0 {
        cfl * dx / max_speed
    } else {
        cfl * dx
    }
}

/// One explicit upwind step with outflow ghost cells.
pub fn step(eos: &EosParams, field: &Field, dt: f64) -> Result<Field> {
    let n = field.grid.n_cells;
    let ratio = dt / field.grid.dx();
    let time = field.time + dt;
    let u = |j: usize| Vector2::new(field.rho[j], field.v[j]);
    let mut rho = Vec::with_capacity(n);
    let mut v = Vec::with_capacity(n);
    for j in 0..n {
        let uj = u(j);
        let du_right = u((j + 1).min(n - 1)) - uj;
        let du_left = uj - u(j.saturating_sub(1));
        let next = if du_right == Vector2::zeros() && du_left == Vector2::zeros() {
            uj
        } else {
            let (plus, minus) = split(eos, field.state(j))?;
            uj - ratio * (minus * du_right + plus * du_left)
        };
        let s = State::new(next[0], next[1]);
        if eos.check_state(s).is_err() {
            return Err(Error::BlowUp {
                cell: j,
                time,
                rho: s.rho,
                v: s.v,
            });
        }
        rho.push(s.rho);
        v.push(s.v);
    }
    Ok(Field {
        grid: field.grid,
        rho,
        v,
        time,
    })
}

/// Evolves `field` up to `t_end`, clipping the last step.
pub fn advance(eos: &EosParams, mut field: Field, cfg: &SchemeConfig) -> Result<Field> {
    let mut steps = 0;
    while field.time < cfg.t_end {
        if steps >= cfg.max_steps {
            return Err(Error::MaxSteps(cfg.max_steps));
        }
        let dt = stable_dt(eos, &field, cfg.cfl).min(cfg.t_end - field.time);
        field = step(eos, &field, dt)?;
        if cfg.t_end - field.time <= 4.0 * f64::EPSILON * cfg.t_end {
            field.time = cfg.t_end;
        }
        steps += 1;
    }
    Ok(field)
}

/// Runs the Riemann problem with the jump at `x = 0` to `cfg.t_end`.
pub fn run(
    eos: &EosParams,
    left: State,
    right: State,
    grid: Grid,
    cfg: &SchemeConfig,
) -> Result<Field> {
    if !(grid.x_min < 0.0 && grid.x_max > 0.0) {
        return Err(Error::Precondition(format!(
            "grid [{}, {}] must straddle x = 0",
            grid.x_min, grid.x_max
        )));
    }
    eos.check_state(left)?;
    eos.check_state(right)?;
    advance(eos, Field::riemann(grid, left, right), cfg)
}

/// `sum_j |rho_j - rho_exact(x_j)| dx` against a pointwise reference.
pub fn l1_density_error(field: &Field, exact: impl Fn(f64) -> f64) -> f64 {
    let dx = field.grid.dx();
    field
        .grid
        .centers()
        .zip(&field.rho)
        .map(|(x, rho)| (rho - exact(x)).abs())
        .sum::<f64>()
        * dx
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_gamma2() -> EosParams {
        EosParams::new(1.0, 0.0, 1.0, 2.0, 1.0).unwrap()
    }

    #[test]
    fn coefficient_matrix_example() {
        let b = coefficient_matrix(&unit_gamma2(), State::new(1.0, 5.0)).unwrap();
        assert_eq!(b, Mat2::new(5.0, 1.0, 0.0, 2.0));
        let b0 = coefficient_matrix(&unit_gamma2(), State::new(2.0, 0.0)).unwrap();
        let dp = unit_gamma2().pressure_derivative(2.0).unwrap();
        assert_eq!(b0, Mat2::new(0.0, 2.0, 0.0, -2.0 * dp));
    }

    #[test]
    fn eigenvalues_match_characteristic_speeds() {
        let eos = unit_gamma2();
        let s = State::new(1.0, 5.0);
        let dec = eigendecomposition(&eos, s).unwrap();
        assert_eq!(dec.eigenvalues, Vector2::new(5.0, 2.0));
        assert!((dec.eigenvalues[1] - eos.lambda1(s).unwrap()).abs() < 1e-12);
        assert_eq!(dec.right * dec.left, Mat2::identity());
    }

    #[test]
    fn split_supersonic_state() {
        let eos = unit_gamma2();
        let s = State::new(1.0, 5.0);
        let (plus, minus) = split(&eos, s).unwrap();
        assert_eq!(minus, Mat2::zeros());
        let b = coefficient_matrix(&eos, s).unwrap();
        assert!((plus - b).amax() <= 1e-12 * b.amax());
    }

    #[test]
    fn split_transonic_state() {
        let eos = unit_gamma2();
        let s = State::new(1.0, 1.0); // lambda1 = -2, lambda2 = 1
        let (plus, minus) = split(&eos, s).unwrap();
        let mut ep: Vec<f64> = plus.eigenvalues().unwrap().iter().copied().collect();
        let mut em: Vec<f64> = minus.eigenvalues().unwrap().iter().copied().collect();
        ep.sort_by(f64::total_cmp);
        em.sort_by(f64::total_cmp);
        assert!((ep[0] - 0.0).abs() < 1e-12 && (ep[1] - 1.0).abs() < 1e-12);
        assert!((em[0] + 2.0).abs() < 1e-12 && em[1].abs() < 1e-12);
    }

    #[test]
    fn stable_dt_examples() {
        let eos = unit_gamma2();
        let grid = Grid::new(-1.0, 1.0, 100).unwrap();
        let f = Field::uniform(grid, State::new(1.0, 5.0));
        assert!((stable_dt(&eos, &f, 0.5) - 0.5 * grid.dx() / 5.0).abs() < 1e-15);

        let gcg = EosParams::new(0.0, 0.0, 1.0, 2.0, 1.0).unwrap();
        let f = Field::uniform(grid, State::new(1.0, 0.0));
        assert!((stable_dt(&gcg, &f, 0.5) - 0.5 * grid.dx()).abs() < 1e-15);
    }

    #[test]
    fn config_and_grid_validation() {
        assert!(SchemeConfig::new(0.0, 0.1, 10).is_err());
        assert!(SchemeConfig::new(1.5, 0.1, 10).is_err());
        assert!(SchemeConfig::new(1.0, 0.1, 10).is_ok());
        assert!(Grid::new(1.0, -1.0, 10).is_err());
        assert!(Grid::new(-1.0, 1.0, 3).is_err());
        let g = Grid::new(-1.0, 1.0, 4).unwrap();
        assert_eq!(g.centers().collect::<Vec<_>>(), vec![-0.75, -0.25, 0.25, 0.75]);
    }

    #[test]
    fn constant_field_is_fixed() {
        let eos = EosParams::new(1.0, 0.01, 1.0, 2.0, 0.25).unwrap();
        let f = Field::uniform(Grid::new(-1.0, 1.0, 50).unwrap(), State::new(3.0, 1.5));
        let g = step(&eos, &f, 1e-3).unwrap();
        assert_eq!(g.rho, f.rho);
        assert_eq!(g.v, f.v);
        assert_eq!(g.time, 1e-3);
    }

    #[test]
    fn one_step_touches_only_the_jump() {
        let eos = EosParams::new(1.0, 0.01, 1.0, 2.0, 0.25).unwrap();
        let grid = Grid::new(-1.0, 1.0, 20).unwrap();
        let f = Field::riemann(grid, State::new(1.0, 5.0), State::new(1.0, 2.0));
        let dt = stable_dt(&eos, &f, 0.5);
        let g = step(&eos, &f, dt).unwrap();
        for j in 0..20 {
            let changed = g.rho[j] != f.rho[j] || g.v[j] != f.v[j];
            if j != 9 && j != 10 {
                assert!(!changed, "cell {j}");
            }
        }
        // both characteristic speeds are positive on the left: only the
        // downwind cell of the jump moves
        assert_ne!(g.rho[10], f.rho[10]);
        assert_eq!(g.rho[9], f.rho[9]);
    }

    #[test]
    fn run_requires_straddling_grid() {
        let eos = unit_gamma2();
        let s = State::new(1.0, 1.0);
        let grid = Grid::new(0.5, 1.0, 10).unwrap();
        assert!(run(&eos, s, s, grid, &SchemeConfig::default()).is_err());
    }

    #[test]
    fn max_steps_enforced() {
        let eos = unit_gamma2();
        let s = State::new(1.0, 1.0);
        let grid = Grid::new(-1.0, 1.0, 10).unwrap();
        let cfg = SchemeConfig::new(0.5, 10.0, 3).unwrap();
        assert_eq!(run(&eos, s, s, grid, &cfg), Err(Error::MaxSteps(3)));
    }

    #[test]
    fn blow_up_is_reported() {
        let eos = unit_gamma2();
        let grid = Grid::new(-1.0, 1.0, 10).unwrap();
        let f = Field::riemann(grid, State::new(1.0, 1.0), State::new(1.0, 5.0));
        // far beyond the stable step
        assert!(matches!(step(&eos, &f, 10.0), Err(Error::BlowUp { .. })));
    }

    #[test]
    fn steepest_gradient_location() {
        let grid = Grid::new(-1.0, 1.0, 8).unwrap();
        let mut f = Field::uniform(grid, State::new(1.0, 1.0));
        f.v[5] = 3.0;
        f.v[6] = 3.0;
        f.v[7] = 3.0;
        assert_eq!(f.steepest_velocity_gradient(), 0.25);
    }
}
