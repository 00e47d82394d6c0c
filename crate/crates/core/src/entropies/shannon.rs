//! Shannon entropies: exact radial and angular integrals, and the large-D conjecture.

use std::f64::consts::{E, PI};

use crate::error::Result;
use crate::laguerre_asym::AsymptoticBreakdown;
use crate::specfun::gamma::{ln_gamma, psi};
use crate::specfun::poly::{gegenbauer, laguerre, laguerre_roots};
use crate::specfun::quadrature::{integrate_log, Interval, PeakHint, QuadratureSpec};
use crate::specfun::LogValue;
use crate::states::{HarmonicState, Space};
use crate::Mode;

use super::angular::{
    alpha_j, ln_norm_factor, ln_norm_run, segments, transition_integral, Segment,
};
use super::EntropyResult;

pub fn shannon(
    state: &HarmonicState,
    space: Space,
    mode: Mode,
    spec: &QuadratureSpec,
) -> Result<EntropyResult> {
    state.validate()?;
    match mode {
        Mode::Exact => {
            let radial = radial_shannon(state, space, spec)?;
            let angular = angular_shannon(state, spec)?;
            Ok(EntropyResult::split(radial, angular, None))
        }
        Mode::Asymptotic => Ok(conjecture(state, space)),
    }
}

/// `-int rho ln rho r^{D-1} dr` written in `x = lambda r^2` around the mean `x = 2n + l + D/2`.
pub fn radial_shannon(state: &HarmonicState, space: Space, spec: &QuadratureSpec) -> Result<f64> {
    let lam = state.lambda_in(space);
    let alpha = state.alpha();
    let n = state.n as usize;
    let l = f64::from(state.l());
    let mean = 2.0 * f64::from(state.n) + alpha + 1.0;
    let ln_mean = mean.ln();
    let mut value = -state.ln_radial_norm() - state.d() / 2.0 * lam.ln() + mean - l * ln_mean;
    if n == 0 && state.l() == 0 {
        return Ok(value);
    }
    let ln_weight = ln_gamma(f64::from(state.n) + 1.0) - ln_gamma(f64::from(state.n) + alpha + 1.0);
    let splits = if n > 0 {
        laguerre_roots(n, alpha)?
    } else {
        Vec::new()
    };
    let correction = integrate_log(
        |x: f64| {
            let lag = laguerre(n, alpha, x);
            let bracket = l * (x.ln() - ln_mean) + 2.0 * lag.log_mag();
            lag.abs_powf(2.0).scale_log(ln_weight + alpha * x.ln() - x)
                * LogValue::from_f64(bracket)
        },
        Interval::semi_infinite(0.0),
        &spec.with_splits(splits),
        Some(PeakHint {
            location: mean,
            width: mean.sqrt(),
        }),
    )
    .map_err(|e| e.in_integral("radial Shannon integral"))?;
    value -= correction.to_f64();
    Ok(value)
}

/// `-int |Y|^2 ln |Y|^2 dOmega` as a sum of one-angle entropies.
pub fn angular_shannon(state: &HarmonicState, spec: &QuadratureSpec) -> Result<f64> {
    let d = state.dim;
    let mut acc = (2.0 * PI).ln();
    for seg in segments(state) {
        acc += match seg {
            Segment::Run {
                mu,
                j_first,
                j_last,
            } => {
                let z_first = alpha_j(d, j_first) + mu;
                let z_last = alpha_j(d, j_last) + mu;
                // sum of E[ln sin] telescopes to (psi(z_last + 1/2) - psi(z_first + 1)) / 2
                -ln_norm_run(d, mu, j_first, j_last) - mu * (psi(z_last + 0.5) - psi(z_first + 1.0))
            }
            Segment::Transition { j, mu, mu_next } => {
                let ln_norm = ln_norm_factor(d, j, mu, mu_next);
                let beta = alpha_j(d, j) + mu_next;
                let delta = (mu - mu_next) as usize;
                let s = 2.0 * mu_next + 2.0 * alpha_j(d, j);
                let expectation = transition_integral(
                    d,
                    j,
                    mu,
                    mu_next,
                    s,
                    |th: f64| {
                        let c = gegenbauer(delta, beta, th.cos());
                        let ln_sin = th.sin().ln();
                        let g = 2.0 * c.log_mag() + 2.0 * mu_next * ln_sin;
                        c.abs_powf(2.0).scale_log(ln_norm + s * ln_sin) * LogValue::from_f64(g)
                    },
                    spec,
                )?;
                -ln_norm - expectation.to_f64()
            }
        };
    }
    Ok(acc)
}

/// Ground-state value `(D/2) ln(e pi / lambda)` (position) or `(D/2) ln(e pi lambda)`
/// (momentum) conjectured for every state at large D.
pub fn conjecture(state: &HarmonicState, space: Space) -> EntropyResult {
    let d = state.d();
    let lam = state.lambda_in(space);
    let value = 0.5 * d * (E * PI / lam).ln();
    let radial = 0.5 * d * d.ln() - 0.5 * d * (2.0 * lam).ln();
    let breakdown = AsymptoticBreakdown::from_terms([("linear", value)]);
    let mut out = EntropyResult::split(radial, value - radial, Some(breakdown));
    out.conjecture = true;
    out.notes
        .push("Shannon large-D value is conjectural".into());
    out
}
