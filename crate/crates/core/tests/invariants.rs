use std::f64::consts::PI;

use hdo_core::entropies::{renyi_angular, renyi_radial};
use hdo_core::{
    check_bounds, heisenberg_product, radial_moment, renyi_total, shannon, uncertainty_sum,
    HarmonicState, Mode, MomentQuery, QuadratureSpec, Space,
};
use proptest::prelude::*;

fn chain_strategy(len: usize) -> impl Strategy<Value = Vec<i64>> {
    (0i64..5, proptest::collection::vec(0i64..3, len)).prop_map(move |(top, drops)| {
        let mut out = Vec::with_capacity(len);
        let mut cur = top;
        for d in drops {
            out.push(cur);
            cur = (cur - d).max(0);
        }
        out
    })
}

prop_compose! {
    fn small_state()(d in 2usize..30, n in 0u32..4, lam in 0.2f64..4.0)
        (chain in chain_strategy(d - 1), d in Just(d), n in Just(n), lam in Just(lam)) -> HarmonicState {
        HarmonicState::from_chain(d, lam, n, &chain).unwrap()
    }
}

fn spec() -> QuadratureSpec {
    QuadratureSpec::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn total_is_radial_plus_angular(s in small_state(), q in prop::sample::select(vec![0.3, 0.7, 1.5, 2.0, 4.0])) {
        let t = renyi_total(&s, q, Space::Position, Mode::Exact, &spec()).unwrap();
        let r = renyi_radial(&s, q, Space::Position, Mode::Exact, &spec()).unwrap().value;
        let a = renyi_angular(&s, q, Mode::Exact, &spec()).unwrap().value;
        prop_assert!((t.value - (r + a)).abs() <= 1e-12 * t.value.abs().max(1.0));
    }

    #[test]
    fn momentum_shift(s in small_state(), q in 0.3f64..5.0) {
        prop_assume!((q - 1.0).abs() > 1e-3);
        let p = renyi_total(&s, q, Space::Position, Mode::Exact, &spec()).unwrap().value;
        let m = renyi_total(&s, q, Space::Momentum, Mode::Exact, &spec()).unwrap().value;
        prop_assert!((m - p - s.d() * s.lambda.ln()).abs() < 1e-9);
    }

    #[test]
    fn renyi_non_increasing_in_q(s in small_state()) {
        let qs = [0.5, 0.8, 1.2, 2.0, 3.0, 5.0];
        let v: Vec<f64> = qs.iter().map(|&q| renyi_total(&s, q, Space::Position, Mode::Exact, &spec()).unwrap().value).collect();
        for w in v.windows(2) {
            prop_assert!(w[1] <= w[0] + 1e-10, "{:?}", v);
        }
    }

    #[test]
    fn uncertainty_bounds_hold(s in small_state(), q in prop::sample::select(vec![0.6, 0.75, 1.5, 2.0, 4.0])) {
        let r = uncertainty_sum(&s, q, &spec()).unwrap();
        prop_assert!(r.renyi_slack >= -1e-9, "{:?}", r);
        prop_assert!(r.shannon_slack >= -1e-9, "{:?}", r);
    }

    #[test]
    fn sums_ignore_lambda(s in small_state(), q in prop::sample::select(vec![0.75, 2.0, 3.0])) {
        let base = uncertainty_sum(&s.with_lambda(1.0).unwrap(), q, &spec()).unwrap();
        for lam in [0.5, 2.0] {
            let r = uncertainty_sum(&s.with_lambda(lam).unwrap(), q, &spec()).unwrap();
            prop_assert!((r.sum_exact - base.sum_exact).abs() < 1e-9);
            prop_assert!((r.shannon_sum - base.shannon_sum).abs() < 1e-9);
        }
    }

    #[test]
    fn ns_angular_is_log_area(d in 2usize..400, q in prop::sample::select(vec![0.25, 0.5, 2.0, 7.0])) {
        let s = HarmonicState::ns(d, 1.0, 1).unwrap();
        let v = renyi_angular(&s, q, Mode::Exact, &spec()).unwrap().value;
        let h = d as f64 / 2.0;
        let area = 2f64.ln() + h * PI.ln() - statrs::function::gamma::ln_gamma(h);
        prop_assert!((v - area).abs() < 1e-10 * area.abs().max(1.0));
    }

    #[test]
    fn heisenberg_products_bounded(s in small_state()) {
        let b = check_bounds(&s, &spec()).unwrap();
        prop_assert!(b.heisenberg_satisfied && b.central_satisfied, "{:?}", b);
        let e = s.energy() / s.lambda;
        prop_assert!((b.product / (e * e) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn momentum_moments_scale(s in small_state(), t in 0.0f64..6.0) {
        let r = radial_moment(&MomentQuery::new(s.clone(), t, Space::Position, Mode::Exact), &spec()).unwrap();
        let p = radial_moment(&MomentQuery::new(s.clone(), t, Space::Momentum, Mode::Exact), &spec()).unwrap();
        prop_assert!((p / (s.lambda.powf(t) * r) - 1.0).abs() < 1e-9);
        let prod = heisenberg_product(&s, t, t, Mode::Exact, &spec()).unwrap();
        prop_assert!((prod / (r * r * s.lambda.powf(t)) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn shannon_below_low_q_renyi(s in small_state()) {
        let sh = shannon(&s, Space::Position, Mode::Exact, &spec()).unwrap().value;
        let lo = renyi_total(&s, 0.9, Space::Position, Mode::Exact, &spec()).unwrap().value;
        let hi = renyi_total(&s, 1.1, Space::Position, Mode::Exact, &spec()).unwrap().value;
        prop_assert!(hi <= sh + 1e-10 && sh <= lo + 1e-10);
    }
}
