//! Python bindings: the equation of state, the exact solver, the limit
//! analysis, the upwind scheme and the preset experiments.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use awrascle::eos::{EosParams, State};
use awrascle::exact_riemann::{self, SolutionKind};
use awrascle::harness::{self, Overrides};
use awrascle::limit_analysis;
use awrascle::upwind_scheme::{self, Grid, SchemeConfig};

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn state((rho, v): (f64, f64)) -> State {
    State::new(rho, v)
}

/// `p = A (rho / (1 - a rho))^Gamma - B / rho^kappa`
#[pyclass(name = "Eos", frozen, skip_from_py_object)]
#[derive(Clone, Copy)]
struct PyEos {
    inner: EosParams,
}

#[pymethods]
impl PyEos {
    #[new]
    #[pyo3(signature = (A, a, B, gamma, kappa))]
    #[allow(non_snake_case)]
    fn new(A: f64, a: f64, B: f64, gamma: f64, kappa: f64) -> PyResult<Self> {
        EosParams::new(A, a, B, gamma, kappa).map(|inner| Self { inner }).map_err(err)
    }

    #[getter(A)]
    fn pressure_scale(&self) -> f64 {
        self.inner.pressure_scale()
    }

    #[getter]
    fn a(&self) -> f64 {
        self.inner.excluded_volume()
    }

    #[getter(B)]
    fn chaplygin(&self) -> f64 {
        self.inner.chaplygin()
    }

    #[getter]
    fn gamma(&self) -> f64 {
        self.inner.gamma()
    }

    #[getter]
    fn kappa(&self) -> f64 {
        self.inner.kappa()
    }

    fn max_density(&self) -> f64 {
        self.inner.max_density()
    }

    fn pressure(&self, rho: f64) -> PyResult<f64> {
        self.inner.pressure(rho).map_err(err)
    }

    fn pressure_derivative(&self, rho: f64) -> PyResult<f64> {
        self.inner.pressure_derivative(rho).map_err(err)
    }

    fn lambda1(&self, rho: f64, v: f64) -> PyResult<f64> {
        self.inner.lambda1(State::new(rho, v)).map_err(err)
    }

    fn lambda2(&self, rho: f64, v: f64) -> f64 {
        self.inner.lambda2(State::new(rho, v))
    }

    fn riemann_invariant(&self, rho: f64, v: f64) -> PyResult<f64> {
        self.inner.riemann_invariant(State::new(rho, v)).map_err(err)
    }

    fn __repr__(&self) -> String {
        let e = &self.inner;
        format!(
            "Eos(A={}, a={}, B={}, gamma={}, kappa={})",
            e.pressure_scale(),
            e.excluded_volume(),
            e.chaplygin(),
            e.gamma(),
            e.kappa()
        )
    }
}

#[pyclass(name = "RiemannSolution", frozen)]
struct PySolution {
    eos: EosParams,
    inner: exact_riemann::RiemannSolution,
}

#[pymethods]
impl PySolution {
    /// "constant", "contact", "shock+contact" or "rarefaction+contact".
    #[getter]
    fn kind(&self) -> &'static str {
        match self.inner.kind {
            SolutionKind::Constant => "constant",
            SolutionKind::Contact => "contact",
            SolutionKind::ShockContact => "shock+contact",
            SolutionKind::RarefactionContact => "rarefaction+contact",
        }
    }

    #[getter]
    fn star(&self) -> Option<(f64, f64)> {
        self.inner.star.map(|s| (s.rho, s.v))
    }

    #[getter]
    fn shock_speed(&self) -> Option<f64> {
        self.inner.shock_speed()
    }

    #[getter]
    fn fan(&self) -> Option<(f64, f64)> {
        self.inner.fan()
    }

    #[getter]
    fn contact_speed(&self) -> f64 {
        self.inner.contact_speed
    }

    #[getter]
    fn invariant(&self) -> f64 {
        self.inner.invariant
    }

    /// `(rho, v)` at `xi = x / t`.
    fn sample(&self, xi: f64) -> (f64, f64) {
        let s = exact_riemann::sample(&self.eos, &self.inner, xi);
        (s.rho, s.v)
    }

    fn __repr__(&self) -> String {
        match self.star() {
            Some((rho, v)) => format!("RiemannSolution(kind='{}', star=({rho}, {v}))", self.kind()),
            None => format!("RiemannSolution(kind='{}', star=None)", self.kind()),
        }
    }
}

/// Exact Riemann solution for `left = (rho, v)` and `right = (rho, v)`.
#[pyfunction]
fn solve(eos: PyRef<'_, PyEos>, left: (f64, f64), right: (f64, f64)) -> PyResult<PySolution> {
    let inner = exact_riemann::solve(&eos.inner, state(left), state(right)).map_err(err)?;
    Ok(PySolution { eos: eos.inner, inner })
}

/// "Ia", "Ib" or "II".
#[pyfunction]
#[pyo3(signature = (left, right, B, kappa))]
#[allow(non_snake_case)]
fn classify_limit(left: (f64, f64), right: (f64, f64), B: f64, kappa: f64) -> &'static str {
    limit_analysis::classify_limit(state(left), state(right), B, kappa).label()
}

/// Region and, in region Ia, the delta shock `speed`, `weight_coefficient`
/// and `pressure_limit`.
#[pyfunction]
#[pyo3(signature = (left, right, B, kappa))]
#[allow(non_snake_case)]
fn predict<'py>(
    py: Python<'py>,
    left: (f64, f64),
    right: (f64, f64),
    B: f64,
    kappa: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let p = limit_analysis::predict(state(left), state(right), B, kappa);
    let d = PyDict::new(py);
    d.set_item("region", p.region.label())?;
    match p.delta {
        Some(delta) => {
            let inner = PyDict::new(py);
            inner.set_item("speed", delta.speed)?;
            inner.set_item("weight_coefficient", delta.weight_coefficient)?;
            inner.set_item("pressure_limit", delta.pressure_limit)?;
            d.set_item("delta", inner)?;
        }
        None => d.set_item("delta", py.None())?,
    }
    Ok(d)
}

/// One dict per `(A, a)` pair with `rho_star`, `sigma1`, `sigma2`,
/// `eos_term` and `rh_mass`. Requires `v_r < v_l`.
#[pyfunction]
fn sweep<'py>(
    py: Python<'py>,
    left: (f64, f64),
    right: (f64, f64),
    eos: PyRef<'_, PyEos>,
    pairs: Vec<(f64, f64)>,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let rows = limit_analysis::sweep(state(left), state(right), &eos.inner, &pairs).map_err(err)?;
    rows.into_iter()
        .map(|row| {
            let r = row.map_err(|f| err(f.error))?;
            let d = PyDict::new(py);
            d.set_item("A", r.pressure_scale)?;
            d.set_item("a", r.excluded_volume)?;
            d.set_item("rho_star", r.rho_star)?;
            d.set_item("sigma1", r.sigma1)?;
            d.set_item("sigma2", r.sigma2)?;
            d.set_item("eos_term", r.eos_term)?;
            d.set_item("rh_mass", r.rh_mass)?;
            Ok(d)
        })
        .collect()
}

/// Requires `v_r >= v_l`.
#[pyfunction]
fn no_vacuum_check<'py>(
    py: Python<'py>,
    left: (f64, f64),
    right: (f64, f64),
    eos: PyRef<'_, PyEos>,
    pairs: Vec<(f64, f64)>,
) -> PyResult<Bound<'py, PyDict>> {
    let rep = limit_analysis::no_vacuum_check(state(left), state(right), &eos.inner, &pairs).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("holds", rep.holds)?;
    d.set_item("infimum", rep.infimum)?;
    d.set_item("limit_density", rep.limit_density)?;
    d.set_item("floor", rep.floor)?;
    d.set_item("rho_star", rep.rho_star)?;
    Ok(d)
}

/// `(x, rho, v, t)`
type Profile = (Vec<f64>, Vec<f64>, Vec<f64>, f64);

/// Upwind run of the Riemann problem with the jump at `x = 0`.
#[pyfunction]
#[pyo3(signature = (eos, left, right, n_cells=800, x_min=-1.0, x_max=1.0, cfl=0.5, t_end=0.1))]
#[allow(clippy::too_many_arguments)]
fn simulate(
    py: Python<'_>,
    eos: PyRef<'_, PyEos>,
    left: (f64, f64),
    right: (f64, f64),
    n_cells: usize,
    x_min: f64,
    x_max: f64,
    cfl: f64,
    t_end: f64,
) -> PyResult<Profile> {
    let eos = eos.inner;
    let grid = Grid::new(x_min, x_max, n_cells).map_err(err)?;
    let cfg = SchemeConfig::new(cfl, t_end, 10_000_000).map_err(err)?;
    let field = py
        .detach(|| upwind_scheme::run(&eos, state(left), state(right), grid, &cfg))
        .map_err(err)?;
    Ok((field.grid.centers().collect(), field.rho, field.v, field.time))
}

/// Runs a preset experiment and returns its flag, verdict and checks.
#[pyfunction]
#[pyo3(signature = (preset, n_cells=None, t_end=None))]
fn run_preset<'py>(
    py: Python<'py>,
    preset: &str,
    n_cells: Option<usize>,
    t_end: Option<f64>,
) -> PyResult<Bound<'py, PyDict>> {
    let overrides = Overrides {
        preset: Some(preset.to_string()),
        n_cells,
        t_end,
        ..Overrides::default()
    };
    let cfg = harness::parse_config_with("", &overrides).map_err(err)?;
    let report = py.detach(|| harness::run_experiment(&cfg));
    let d = PyDict::new(py);
    d.set_item("preset", report.preset.id())?;
    d.set_item("flag", report.flag())?;
    d.set_item("passed", report.passed())?;
    let checks: Vec<(String, bool, bool, String)> = report
        .checks
        .iter()
        .map(|c| (c.name.clone(), c.passed, c.gating, c.detail.clone()))
        .collect();
    d.set_item("checks", checks)?;
    let max_density: Vec<Option<f64>> = report.records.iter().map(|r| r.max_density).collect();
    d.set_item("max_density", max_density)?;
    Ok(d)
}

#[pymodule]
fn awrascle_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyEos>()?;
    m.add_class::<PySolution>()?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(classify_limit, m)?)?;
    m.add_function(wrap_pyfunction!(predict, m)?)?;
    m.add_function(wrap_pyfunction!(sweep, m)?)?;
    m.add_function(wrap_pyfunction!(no_vacuum_check, m)?)?;
    m.add_function(wrap_pyfunction!(simulate, m)?)?;
    m.add_function(wrap_pyfunction!(run_preset, m)?)?;
    Ok(())
}
