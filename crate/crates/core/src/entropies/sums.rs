//! Position-momentum Rényi and Shannon uncertainty sums.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::specfun::QuadratureSpec;
use crate::states::{HarmonicState, Space};
use crate::Mode;

use super::{is_shannon_limit, ln_q_power, renyi_total, shannon::shannon};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UncertaintyReport {
    pub q: f64,
    /// Conjugate index, `1/p + 1/q = 2`.
    pub p: f64,
    /// `R_q[rho] + R_p[gamma]` from quadrature.
    pub sum_exact: f64,
    pub sum_asym: f64,
    pub renyi_bound: f64,
    pub renyi_slack: f64,
    pub shannon_sum: f64,
    pub shannon_bound: f64,
    pub shannon_slack: f64,
}

pub fn conjugate_index(q: f64) -> Result<f64> {
    if !(q > 0.5) || !q.is_finite() || is_shannon_limit(q) {
        return Err(Error::domain(
            "uncertainty_sum",
            format!("q = {q}: need q > 1/2 and q != 1 for a conjugate p = q/(2q-1)"),
        ));
    }
    Ok(q / (2.0 * q - 1.0))
}

/// `D ln(p^{1/(2(p-1))} q^{1/(2(q-1))} pi)`.
pub fn renyi_bound(d: f64, q: f64, p: f64) -> f64 {
    d * (0.5 * ln_q_power(p) + 0.5 * ln_q_power(q) + PI.ln())
}

/// `D (1 + ln pi)`.
pub fn shannon_bound(d: f64) -> f64 {
    d * (1.0 + PI.ln())
}

pub fn uncertainty_sum(
    state: &HarmonicState,
    q: f64,
    spec: &QuadratureSpec,
) -> Result<UncertaintyReport> {
    state.validate()?;
    let p = conjugate_index(q)?;
    let d = state.d();
    let sum_exact = renyi_total(state, q, Space::Position, Mode::Exact, spec)?.value
        + renyi_total(state, p, Space::Momentum, Mode::Exact, spec)?.value;
    let sum_asym = renyi_total(state, q, Space::Position, Mode::Asymptotic, spec)?.value
        + renyi_total(state, p, Space::Momentum, Mode::Asymptotic, spec)?.value;
    let shannon_sum = shannon(state, Space::Position, Mode::Exact, spec)?.value
        + shannon(state, Space::Momentum, Mode::Exact, spec)?.value;
    let renyi_bound = renyi_bound(d, q, p);
    let shannon_bound = shannon_bound(d);
    Ok(UncertaintyReport {
        q,
        p,
        sum_exact,
        sum_asym,
        renyi_bound,
        renyi_slack: sum_exact - renyi_bound,
        shannon_sum,
        shannon_bound,
        shannon_slack: shannon_sum - shannon_bound,
    })
}
