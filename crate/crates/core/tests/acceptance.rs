//! End-to-end acceptance checks. Each test prints a single
//! `[PASS]`/`[FAIL]` line; run with `-- --nocapture --test-threads=1`
//! to see them in order.

use std::cell::Cell;

use awrascle::eos::{EosParams, State};
use awrascle::exact_riemann::{self, FirstWave, SolutionKind};
use awrascle::harness::{CASE_III_PAIRS, CASE_II_PAIRS, CASE_I_PAIRS};
use awrascle::limit_analysis::{self, SweepRow};
use awrascle::upwind_scheme::{self, Field, Grid, SchemeConfig};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

fn verdict(id: u32, what: &str, passed: bool, detail: String) {
    println!("[{}] {id:02} {what}: {detail}", if passed { "PASS" } else { "FAIL" });
    assert!(passed, "{what}: {detail}");
}

/// Pressure written out from the closed form, kept separate from the library.
fn oracle_pressure(big_a: f64, a: f64, b: f64, gamma: f64, kappa: f64, rho: f64) -> f64 {
    big_a * (rho / (1.0 - a * rho)).powf(gamma) - b / rho.powf(kappa)
}

/// Plain midpoint bisection of an increasing function to 1e-12.
fn oracle_root(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    assert!(f(lo) < 0.0 && f(hi) > 0.0, "oracle bracket");
    while hi - lo > 1e-12 * hi.max(1.0) {
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Intermediate density from `p(rho) = v_l + p(rho_l) - v_r`.
fn oracle_star(big_a: f64, a: f64, b: f64, gamma: f64, kappa: f64, left: State, v_r: f64) -> f64 {
    let p = |r| oracle_pressure(big_a, a, b, gamma, kappa, r);
    let target = left.v + p(left.rho) - v_r;
    let hi = if a > 0.0 { (1.0 - 1e-15) / a } else { 1e12 };
    oracle_root(|r| p(r) - target, 1e-12, hi)
}

const CASE_I: (State, State, f64) = (State::new(1.0, 5.0), State::new(1.0, 2.0), 0.25);
const CASE_II: (State, State, f64) = (State::new(2.0, 5.0), State::new(1.0, 4.5), 0.5);
const CASE_III: (State, State, f64) = (State::new(1.0, 5.0), State::new(2.0, 7.0), 0.5);

fn eos(big_a: f64, a: f64, kappa: f64) -> EosParams {
    EosParams::new(big_a, a, 1.0, 2.0, kappa).unwrap()
}

fn case_i_rows() -> Vec<SweepRow> {
    let (left, right, kappa) = CASE_I;
    limit_analysis::sweep(left, right, &eos(1.0, 0.01, kappa), &CASE_I_PAIRS)
        .unwrap()
        .into_iter()
        .map(|r| r.unwrap())
        .collect()
}

fn strictly_increasing(xs: &[f64]) -> bool {
    xs.windows(2).all(|w| w[1] > w[0])
}

fn strictly_decreasing(xs: &[f64]) -> bool {
    xs.windows(2).all(|w| w[1] < w[0])
}

#[test]
fn c01_exact_solver_matches_bisection_oracle() {
    let (left, right, kappa) = CASE_I;
    let law = eos(1.0, 0.01, kappa);
    let sol = exact_riemann::solve(&law, left, right).unwrap();
    let star = sol.star.unwrap();
    let sigma1 = sol.shock_speed().unwrap();
    let oracle = oracle_star(1.0, 0.01, 1.0, 2.0, kappa, left, right.v);

    let (m_shock, w_shock) = exact_riemann::rh_residual(&law, left, star, sigma1).unwrap();
    let (m_contact, w_contact) = exact_riemann::rh_residual(&law, star, right, sol.contact_speed).unwrap();
    let w_left = left.rho * (left.v + law.pressure(left.rho).unwrap());
    let mass_scale = left.rho * left.v.abs().max(sigma1.abs());
    let mom_scale = w_left.abs() * left.v.abs().max(sigma1.abs());
    let rh = (m_shock.abs() / mass_scale)
        .max(w_shock.abs() / mom_scale)
        .max(m_contact.abs() / mass_scale)
        .max(w_contact.abs() / mom_scale);

    let passed = (star.rho - 1.929).abs() <= 0.002
        && (star.rho - oracle).abs() <= 1e-9 * oracle
        && (sigma1 + 1.229).abs() <= 0.01
        && sol.contact_speed == 2.0
        && rh <= 1e-9;
    verdict(
        1,
        "exact solver matches bisection oracle",
        passed,
        format!("rho* = {:.6} (oracle {oracle:.6}), sigma1 = {sigma1:.6}, sigma2 = {}, scaled RH residual {rh:.2e}",
            star.rho, sol.contact_speed),
    );
}

#[test]
fn c02_intermediate_density_blows_up() {
    let (left, right, kappa) = CASE_I;
    let rho: Vec<f64> = case_i_rows().iter().map(|r| r.rho_star).collect();
    let oracle: Vec<f64> = CASE_I_PAIRS
        .iter()
        .map(|&(big_a, a)| oracle_star(big_a, a, 1.0, 2.0, kappa, left, right.v))
        .collect();
    let last = *rho.last().unwrap();
    let agree = rho.iter().zip(&oracle).all(|(r, o)| (r - o).abs() <= 1e-9 * o);
    let passed = strictly_increasing(&rho) && last > 100.0 && (last - 151.3).abs() <= 1.0 && agree;
    verdict(
        2,
        "intermediate density grows without bound",
        passed,
        format!("rho* = {rho:.4?}, oracle {oracle:.4?}"),
    );
}

#[test]
fn c03_excluded_volume_pressure_limit() {
    let (left, right, kappa) = CASE_I;
    let limit = left.v - right.v - 1.0 / left.rho.powf(kappa);
    let err: Vec<f64> = case_i_rows().iter().map(|r| (r.eos_term - limit).abs()).collect();
    let last = *err.last().unwrap();
    verdict(
        3,
        "excluded-volume pressure approaches v_l - v_r - B/rho_l^kappa",
        strictly_decreasing(&err) && last < 0.02,
        format!("|A term - {limit}| = {err:.6?}, need < 0.02 at the final pair"),
    );
}

#[test]
fn c04_wave_speeds_merge() {
    let (_, right, _) = CASE_I;
    let rows = case_i_rows();
    let (first, last) = (rows[0], *rows.last().unwrap());
    let gap_last = (last.sigma1 - right.v).abs();
    let spread = |r: SweepRow| (r.sigma2 - r.sigma1).abs();
    let passed = gap_last < 0.05 && spread(last) < 0.1 * spread(first);
    verdict(
        4,
        "shock and contact speeds merge at v_r",
        passed,
        format!(
            "|sigma1 - 2| = {gap_last:.6}, |sigma2 - sigma1| first {:.6}, last {:.6}",
            spread(first),
            spread(last)
        ),
    );
}

#[test]
fn c05_mass_between_waves_matches_delta_weight() {
    let (left, right, _) = CASE_I;
    let rows = case_i_rows();
    let worst = rows
        .iter()
        .map(|r| (r.rh_mass - r.mass_balance(left, right)).abs() / r.rh_mass.abs())
        .fold(0.0, f64::max);
    let weight = left.rho * (left.v - right.v);
    let final_err = (rows.last().unwrap().rh_mass - weight).abs();
    verdict(
        5,
        "mass between the waves tends to the delta weight",
        worst <= 1e-9 && final_err < 0.05,
        format!("mass-balance residual {worst:.2e}, |rho*(s2-s1) - {weight}| = {final_err:.6}"),
    );
}

#[test]
fn c06_bounded_intermediate_density() {
    let (left, right, kappa) = CASE_II;
    let rho: Vec<f64> = CASE_II_PAIRS
        .iter()
        .map(|&(big_a, a)| exact_riemann::solve_star_density(&eos(big_a, a, kappa), left, right.v).unwrap())
        .collect();
    let oracle = oracle_star(1.0, 0.01, 1.0, 2.0, kappa, left, right.v);
    let (lo, hi) = rho.iter().fold((f64::INFINITY, 0.0_f64), |(lo, hi), &r| (lo.min(r), hi.max(r)));
    let passed = (rho[0] - 2.110).abs() <= 0.005 && (rho[0] - oracle).abs() <= 1e-9 * oracle && hi / lo < 2.0;
    verdict(
        6,
        "intermediate density stays bounded",
        passed,
        format!("rho* = {rho:.6?} (oracle first {oracle:.6}), max/min = {:.4}, need < 2", hi / lo),
    );
}

#[test]
fn c07_no_vacuum() {
    let (left, right, kappa) = CASE_III;
    let base = eos(1.0, 0.01, kappa);
    let report = limit_analysis::no_vacuum_check(left, right, &base, &CASE_III_PAIRS).unwrap();
    let at_reference = exact_riemann::solve_star_density(&base, left, right.v).unwrap();
    let oracle = oracle_star(1.0, 0.01, 1.0, 2.0, kappa, left, right.v);
    let passed = report.infimum > 0.1
        && (at_reference - 0.241).abs() <= 0.005
        && (at_reference - oracle).abs() <= 1e-9 * oracle;
    verdict(
        7,
        "no vacuum along the rarefaction sweep",
        passed,
        format!(
            "infimum rho* = {:.6}, rho*(A=1, a=0.01) = {at_reference:.6} (oracle {oracle:.6})",
            report.infimum
        ),
    );
}

fn admissible_state() -> impl Strategy<Value = (EosParams, State)> {
    (0.01..2.0f64, 0.0..0.05f64, 0.1..2.0f64, 1.0..=3.0f64, 0.05..=1.0f64, 0.0..1.0f64, 0.0..10.0f64).prop_map(
        |(big_a, a, b, gamma, kappa, t, v)| {
            let law = EosParams::new(big_a, a, b, gamma, kappa).unwrap();
            let top = if a > 0.0 { (0.9 / a).min(10.0) } else { 10.0 };
            (law, State::new(0.05 + t * (top - 0.05), v))
        },
    )
}

#[test]
fn c08_split_identities() {
    let mut runner = TestRunner::new(Config::with_cases(100));
    let worst = Cell::new(0.0_f64);
    let outcome = runner.run(&admissible_state(), |(law, s)| {
        let b = upwind_scheme::coefficient_matrix(&law, s).unwrap();
        let dec = upwind_scheme::eigendecomposition(&law, s).unwrap();
        let (plus, minus) = upwind_scheme::split(&law, s).unwrap();
        let scale = b.norm();
        let residuals = [
            (plus + minus - b).norm() / scale,
            (dec.reconstruct() - b).norm() / scale,
            (dec.right * dec.left - upwind_scheme::Mat2::identity()).norm(),
        ];
        let r = residuals.iter().copied().fold(0.0, f64::max);
        worst.set(worst.get().max(r));
        if r <= 1e-12 {
            Ok(())
        } else {
            Err(TestCaseError::fail(format!("residual {r:.2e} at {s:?}")))
        }
    });
    verdict(
        8,
        "split matrices reproduce B",
        outcome.is_ok(),
        format!("100 random states, worst relative residual {:.2e} {outcome:?}", worst.get()),
    );
}

#[test]
fn c09_scheme_converges_on_rarefaction() {
    let (left, right, kappa) = CASE_III;
    let (big_a, a) = CASE_III_PAIRS[0];
    let law = eos(big_a, a, kappa);
    let sol = exact_riemann::solve(&law, left, right).unwrap();
    let cfg = SchemeConfig::new(0.5, 0.1, 1_000_000).unwrap();
    let errors: Vec<f64> = [200, 400, 800]
        .iter()
        .map(|&n| {
            let grid = Grid::new(-1.0, 1.0, n).unwrap();
            let field = upwind_scheme::run(&law, left, right, grid, &cfg).unwrap();
            upwind_scheme::l1_density_error(&field, |x| exact_riemann::sample(&law, &sol, x / field.time).rho)
        })
        .collect();
    let ratios: Vec<f64> = errors.windows(2).map(|w| w[1] / w[0]).collect();
    verdict(
        9,
        "upwind scheme converges under refinement",
        strictly_decreasing(&errors) && ratios.iter().all(|&r| r <= 0.8),
        format!("L1(rho) = {errors:.6?}, ratios {ratios:.3?}"),
    );
}

#[test]
fn c10_numerical_delta_signature() {
    let (left, right, kappa) = CASE_I;
    let grid = Grid::new(-1.0, 1.0, 800).unwrap();
    let cfg = SchemeConfig::new(0.5, 0.1, 1_000_000).unwrap();
    let fields: Vec<Field> = CASE_I_PAIRS
        .iter()
        .map(|&(big_a, a)| upwind_scheme::run(&eos(big_a, a, kappa), left, right, grid, &cfg).unwrap())
        .collect();
    let peaks: Vec<f64> = fields.iter().map(Field::max_density).collect();
    let x = fields.last().unwrap().steepest_velocity_gradient();
    let target = right.v * cfg.t_end;
    let tol = 3.0 * grid.dx();
    verdict(
        10,
        "numerical delta-shock signature",
        strictly_increasing(&peaks) && (x - target).abs() <= tol,
        format!("max rho = {peaks:.4?}, steepest dv at x = {x:.4} (target {target} +/- {tol})"),
    );
}

fn riemann_problem() -> impl Strategy<Value = (EosParams, State, State)> {
    (
        0.05..2.0f64,
        1e-4..0.05f64,
        0.1..2.0f64,
        1.0..=3.0f64,
        0.05..=1.0f64,
        (0.05..5.0f64, 0.0..6.0f64),
        (0.05..5.0f64, 0.0..6.0f64),
    )
        .prop_map(|(big_a, a, b, gamma, kappa, (rl, vl), (rr, vr))| {
            let law = EosParams::new(big_a, a, b, gamma, kappa).unwrap();
            (law, State::new(rl, vl), State::new(rr, vr))
        })
}

fn close(x: State, y: State, tol: f64) -> bool {
    (x.rho - y.rho).abs() <= tol * x.rho.abs().max(1.0) && (x.v - y.v).abs() <= tol * x.v.abs().max(1.0)
}

fn check_problem(law: &EosParams, left: State, right: State) -> Result<(), TestCaseError> {
    let sol = exact_riemann::solve(law, left, right).map_err(|e| TestCaseError::fail(e.to_string()))?;

    // constant states stay put
    let grid = Grid::new(-1.0, 1.0, 40).unwrap();
    let cfg = SchemeConfig::new(0.5, 0.05, 100_000).unwrap();
    let field = upwind_scheme::advance(law, Field::uniform(grid, left), &cfg)
        .map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert!(field.rho.iter().all(|&r| r == left.rho) && field.v.iter().all(|&v| v == left.v));

    // self-similarity: the solution depends on x/t only
    let (slow, fast) = sol.speed_range();
    let jumps: Vec<f64> = [Some(slow), Some(fast), sol.fan().map(|f| f.1)].into_iter().flatten().collect();
    for k in 0..60 {
        let x = -3.0 + 12.0 * k as f64 / 59.0;
        let t = 0.7;
        if jumps.iter().any(|j| (x / t - j).abs() < 1e-6) {
            continue;
        }
        let base = awrascle::harness::exact_state(law, &sol, x, t);
        for c in [0.5, 3.0, 17.0] {
            let scaled = awrascle::harness::exact_state(law, &sol, c * x, c * t);
            prop_assert!(close(base, scaled, 1e-9), "self-similarity at x = {x}, c = {c}");
        }
    }

    match sol.first_wave {
        Some(FirstWave::Rarefaction { head, tail }) => {
            for k in 0..=20 {
                let xi = head + (tail - head) * k as f64 / 20.0;
                let s = exact_riemann::sample(law, &sol, xi);
                let w = law.riemann_invariant(s).unwrap();
                prop_assert!(
                    (w - sol.invariant).abs() <= 1e-10 * sol.invariant.abs().max(1.0),
                    "invariant drift {} in the fan", w - sol.invariant
                );
            }
        }
        Some(FirstWave::Shock { speed }) => {
            let star = sol.star.unwrap();
            let ahead = law.lambda1(star).unwrap();
            let behind = law.lambda1(left).unwrap();
            prop_assert!(ahead < speed && speed < behind, "Lax: {ahead} < {speed} < {behind}");
            prop_assert!(speed < law.lambda2(star), "shock slower than the contact");
        }
        None => prop_assert!(matches!(sol.kind, SolutionKind::Constant | SolutionKind::Contact)),
    }
    Ok(())
}

#[test]
fn c11_invariant_suites() {
    let mut runner = TestRunner::new(Config::with_cases(50));
    let outcome = runner.run(&riemann_problem(), |(law, left, right)| check_problem(&law, left, right));
    verdict(
        11,
        "invariants on random Riemann problems",
        outcome.is_ok(),
        format!("50 cases: constant states, self-similarity, fan invariant, Lax inequalities {outcome:?}"),
    );
}
