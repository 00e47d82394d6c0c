//! Radial expectation values `<r^k>`, `<p^t>` and the uncertainty products built from them.

use crate::error::{Error, Result};
use crate::laguerre_asym::{j1_exact, J1Params};
use crate::specfun::gamma::ln_gamma;
use crate::specfun::QuadratureSpec;
use crate::states::{HarmonicState, Space};
use crate::Mode;

#[derive(Debug, Clone, PartialEq)]
pub struct MomentQuery {
    pub state: HarmonicState,
    /// Moment order (`k` in position space, `t` in momentum space).
    pub order: f64,
    pub space: Space,
    pub mode: Mode,
}

impl MomentQuery {
    pub fn new(state: HarmonicState, order: f64, space: Space, mode: Mode) -> Self {
        MomentQuery {
            state,
            order,
            space,
            mode,
        }
    }
}

/// `ln <r^k>` or `ln <p^t>`.
pub fn radial_moment_log(q: &MomentQuery, spec: &QuadratureSpec) -> Result<f64> {
    q.state.validate()?;
    if !(q.order >= 0.0) || !q.order.is_finite() {
        return Err(Error::domain(
            "radial_moment",
            format!("order {} must be finite and >= 0", q.order),
        ));
    }
    let s = &q.state;
    let half = q.order / 2.0;
    // position moments scale as lambda^{-k/2}, momentum ones as lambda^{+t/2}
    let ln_lambda = match q.space {
        Space::Position => -s.lambda.ln(),
        Space::Momentum => s.lambda.ln(),
    };
    match q.mode {
        Mode::Asymptotic => Ok(half * (s.d() / 2.0).ln() + half * ln_lambda),
        Mode::Exact => {
            let n = f64::from(s.n);
            let p = J1Params::new(half + 1.0, 1.0, 2.0, s.n, s.alpha());
            let j = j1_exact(&p, spec).map_err(|e| {
                e.in_integral(format!(
                    "<{}^{}> radial integral",
                    moment_symbol(q.space),
                    q.order
                ))
            })?;
            Ok(ln_gamma(n + 1.0) - ln_gamma(n + s.alpha() + 1.0) + half * ln_lambda + j.log_mag())
        }
    }
}

pub fn radial_moment(q: &MomentQuery, spec: &QuadratureSpec) -> Result<f64> {
    radial_moment_log(q, spec).map(f64::exp)
}

fn moment_symbol(space: Space) -> &'static str {
    match space {
        Space::Position => "r",
        Space::Momentum => "p",
    }
}

/// `<r^k><p^t>`.
pub fn heisenberg_product(
    state: &HarmonicState,
    k: f64,
    t: f64,
    mode: Mode,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let r = radial_moment_log(
        &MomentQuery::new(state.clone(), k, Space::Position, mode),
        spec,
    )?;
    let p = radial_moment_log(
        &MomentQuery::new(state.clone(), t, Space::Momentum, mode),
        spec,
    )?;
    Ok((r + p).exp())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundsReport {
    /// Exact `<r^2><p^2>`.
    pub product: f64,
    /// `D^2 / 4`.
    pub heisenberg_bound: f64,
    /// `(l + D/2)^2`.
    pub central_bound: f64,
    pub heisenberg_satisfied: bool,
    pub central_satisfied: bool,
    pub heisenberg_slack: f64,
    pub central_slack: f64,
}

const BOUND_REL_TOL: f64 = 1e-9;

pub fn check_bounds(state: &HarmonicState, spec: &QuadratureSpec) -> Result<BoundsReport> {
    let product = heisenberg_product(state, 2.0, 2.0, Mode::Exact, spec)?;
    let d = state.d();
    let heisenberg_bound = d * d / 4.0;
    let central_bound = (f64::from(state.l()) + d / 2.0).powi(2);
    let ok = |bound: f64| product >= bound * (1.0 - BOUND_REL_TOL);
    Ok(BoundsReport {
        product,
        heisenberg_bound,
        central_bound,
        heisenberg_satisfied: ok(heisenberg_bound),
        central_satisfied: ok(central_bound),
        heisenberg_slack: product - heisenberg_bound,
        central_slack: product - central_bound,
    })
}

/// Large-D classical orbit picture.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CharacteristicLength {
    /// `sqrt(D / (2 lambda))`.
    pub r_c: f64,
    /// `lambda^2 r_c^2`.
    pub energy: f64,
    /// `D / 2`.
    pub angular_momentum: f64,
}

pub fn characteristic_length(state: &HarmonicState) -> CharacteristicLength {
    let d = state.d();
    let r_c = (d / (2.0 * state.lambda)).sqrt();
    CharacteristicLength {
        r_c,
        energy: state.lambda * state.lambda * r_c * r_c,
        angular_momentum: d / 2.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::MuRun;

    fn spec() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    fn state(d: usize, lambda: f64, n: u32, l: i64) -> HarmonicState {
        HarmonicState::new(d, lambda, n, vec![MuRun::new(l, d - 1)]).unwrap()
    }

    fn moment(s: &HarmonicState, order: f64, space: Space, mode: Mode) -> f64 {
        radial_moment(&MomentQuery::new(s.clone(), order, space, mode), &spec()).unwrap()
    }

    #[test]
    fn examples() {
        let s = state(9, 0.7, 2, 3);
        assert!((moment(&s, 0.0, Space::Position, Mode::Exact) - 1.0).abs() < 1e-10);
        let g = state(3, 1.0, 0, 0);
        assert!((moment(&g, 2.0, Space::Position, Mode::Exact) - 1.5).abs() < 1e-10);
        let big = state(100, 1.0, 0, 0);
        assert!((moment(&big, 2.0, Space::Position, Mode::Asymptotic) - 50.0).abs() < 1e-12);
    }

    #[test]
    fn virial_closed_forms() {
        for &(d, lam, n, l) in &[
            (3, 1.0, 0, 0),
            (5, 2.0, 1, 2),
            (12, 0.3, 3, 1),
            (40, 1.7, 2, 4),
        ] {
            let s = state(d, lam, n, l);
            let e = 2.0 * f64::from(n) + l as f64 + d as f64 / 2.0;
            let r2 = moment(&s, 2.0, Space::Position, Mode::Exact);
            let p2 = moment(&s, 2.0, Space::Momentum, Mode::Exact);
            assert!((r2 / (e / lam) - 1.0).abs() < 1e-10);
            assert!((p2 / (e * lam) - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn products() {
        let s = state(17, 0.4, 0, 0);
        let p = heisenberg_product(&s, 2.0, 2.0, Mode::Exact, &spec()).unwrap();
        assert!((p / (17.0 * 17.0 / 4.0) - 1.0).abs() < 1e-10);
        let s = state(6, 1.0, 0, 2);
        let p = heisenberg_product(&s, 2.0, 2.0, Mode::Exact, &spec()).unwrap();
        assert!((p / 25.0 - 1.0).abs() < 1e-10);
        let s = state(100, 3.0, 0, 0);
        let p = heisenberg_product(&s, 2.0, 4.0, Mode::Asymptotic, &spec()).unwrap();
        assert!((p / 375_000.0 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn bounds() {
        let b = check_bounds(&state(4, 1.0, 0, 0), &spec()).unwrap();
        assert!(
            (b.product - 4.0).abs() < 1e-9
                && b.heisenberg_slack.abs() < 1e-9
                && b.central_slack.abs() < 1e-9
        );
        assert!(b.heisenberg_satisfied && b.central_satisfied);
        let b = check_bounds(&state(4, 1.0, 1, 0), &spec()).unwrap();
        assert!((b.product - 16.0).abs() < 1e-9 && (b.central_slack - 12.0).abs() < 1e-9);
        let b = check_bounds(&state(3, 1.0, 0, 1), &spec()).unwrap();
        assert!((b.product - 6.25).abs() < 1e-9 && b.central_satisfied);
    }

    #[test]
    fn characteristic_lengths() {
        let c = characteristic_length(&state(2, 1.0, 0, 0));
        assert_eq!((c.r_c, c.energy, c.angular_momentum), (1.0, 1.0, 1.0));
        let c = characteristic_length(&state(50, 0.5, 0, 0));
        assert!((c.r_c - 50f64.sqrt()).abs() < 1e-14);
        assert!((c.energy - 12.5).abs() < 1e-12 && c.angular_momentum == 25.0);
    }

    #[test]
    fn momentum_equals_scaled_position() {
        // <p^t> = lambda^t <r^t>
        for &(d, lam, n, l) in &[(4, 0.5, 1, 0), (11, 2.2, 2, 3), (30, 1.3, 0, 1)] {
            let s = state(d, lam, n, l);
            for &t in &[0.0, 0.5, 1.0, 2.0, 3.0, 4.0] {
                let p = moment(&s, t, Space::Momentum, Mode::Exact);
                let r = moment(&s, t, Space::Position, Mode::Exact);
                assert!((p / (lam.powf(t) * r) - 1.0).abs() < 1e-10, "t = {t}");
            }
        }
    }

    #[test]
    fn equal_order_product_ignores_lambda() {
        let a = heisenberg_product(&state(8, 0.5, 1, 2), 3.0, 3.0, Mode::Exact, &spec()).unwrap();
        let b = heisenberg_product(&state(8, 2.0, 1, 2), 3.0, 3.0, Mode::Exact, &spec()).unwrap();
        assert!((a / b - 1.0).abs() < 1e-10);
    }

    #[test]
    fn negative_order_rejected() {
        let q = MomentQuery::new(state(3, 1.0, 0, 0), -1.0, Space::Position, Mode::Exact);
        assert!(radial_moment(&q, &spec()).is_err());
    }
}
