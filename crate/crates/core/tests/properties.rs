use awrascle::eos::{EosParams, State};
use awrascle::exact_riemann::{self, SolutionKind};
use proptest::prelude::*;

fn law() -> impl Strategy<Value = EosParams> {
    (0.01..2.0f64, 0.0..0.05f64, 0.1..2.0f64, 1.0..=3.0f64, 0.05..=1.0f64)
        .prop_map(|(big_a, a, b, g, k)| EosParams::new(big_a, a, b, g, k).unwrap())
}

/// A density comfortably inside the admissible range.
fn density(eos: &EosParams, t: f64) -> f64 {
    let top = eos.density_bounds().1.min(10.0) * 0.9;
    0.05 + t * (top - 0.05)
}

proptest! {
    #[test]
    fn pressure_is_increasing(eos in law(), t in 0.0..1.0f64, u in 0.0..1.0f64) {
        let (r1, r2) = (density(&eos, t.min(u)), density(&eos, t.max(u)));
        prop_assume!(r2 > r1);
        prop_assert!(eos.pressure(r2).unwrap() > eos.pressure(r1).unwrap());
    }

    #[test]
    fn derivatives_match_finite_differences(eos in law(), t in 0.0..1.0f64) {
        let rho = density(&eos, t);
        let h = 1e-6 * rho;
        let p = |r| eos.pressure(r).unwrap();
        let dp = (p(rho + h) - p(rho - h)) / (2.0 * h);
        let exact = eos.pressure_derivative(rho).unwrap();
        prop_assert!((dp - exact).abs() <= 1e-5 * exact.abs().max(1.0));

        // d lambda1 / d rho along v + p = const
        let w = 50.0;
        let l1 = |r| eos.lambda1(State::new(r, w - p(r))).unwrap();
        let slope = (l1(rho + h) - l1(rho - h)) / (2.0 * h);
        let exact = eos.rarefaction_slope(rho).unwrap();
        prop_assert!((slope - exact).abs() <= 1e-4 * exact.abs().max(1.0));
    }

    #[test]
    fn lambda1_below_lambda2(eos in law(), t in 0.0..1.0f64, v in 0.0..10.0f64) {
        let s = State::new(density(&eos, t), v);
        prop_assert!(eos.lambda1(s).unwrap() < eos.lambda2(s));
    }

    #[test]
    fn star_state_lies_on_both_curves(
        eos in law(),
        t in 0.0..1.0f64,
        u in 0.0..1.0f64,
        vl in 0.0..6.0f64,
        vr in 0.0..6.0f64,
    ) {
        prop_assume!(eos.excluded_volume() > 0.0);
        let (left, right) = (State::new(density(&eos, t), vl), State::new(density(&eos, u), vr));
        let sol = exact_riemann::solve(&eos, left, right).unwrap();
        prop_assert_eq!(sol.contact_speed, vr);
        if let Some(star) = sol.star {
            prop_assert_eq!(star.v, vr);
            let w = eos.riemann_invariant(star).unwrap();
            prop_assert!((w - sol.invariant).abs() <= 1e-10 * sol.invariant.abs().max(1.0));
        }
        if sol.kind == SolutionKind::ShockContact {
            let star = sol.star.unwrap();
            let s1 = exact_riemann::shock_speed(&eos, left, star).unwrap();
            let s2 = exact_riemann::shock_speed_from_star(&eos, left, star).unwrap();
            prop_assert!((s1 - s2).abs() <= 1e-8 * s1.abs().max(1.0));
            prop_assert!(star.rho > left.rho);
        }
        if sol.kind == SolutionKind::RarefactionContact {
            prop_assert!(sol.star.unwrap().rho < left.rho);
        }
    }
}
