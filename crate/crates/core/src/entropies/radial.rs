//! Radial Rényi entropies via the Laguerre weighted norm
//! `N(D, q) = (n!/Gamma(alpha+n+1))^q int x^{alpha+lq-l} e^{-qx} |L_n^alpha|^{2q} dx`.

use crate::error::{Error, Result};
use crate::laguerre_asym::{j1_exact, AsymptoticBreakdown, J1Params};
use crate::specfun::gamma::ln_gamma;
use crate::specfun::{LogValue, QuadratureSpec};
use crate::states::{HarmonicState, Space};
use crate::Mode;

use super::{check_q, is_shannon_limit, ln_q_power, shannon, EntropyResult};

/// `ln N(D, q)`.
pub(crate) fn ln_laguerre_norm(
    state: &HarmonicState,
    q: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let l = f64::from(state.l());
    let n = f64::from(state.n);
    let alpha = state.alpha();
    let p = J1Params::new(l * q - l + 1.0, q, 2.0 * q, state.n, alpha);
    let j =
        j1_exact(&p, spec).map_err(|e| e.in_integral(format!("radial entropic moment W_{q}")))?;
    Ok(q * (ln_gamma(n + 1.0) - ln_gamma(alpha + n + 1.0)) + j.log_mag())
}

/// `W_q = int rho(r)^q r^{D-1} dr`.
pub fn entropic_moment_radial(
    state: &HarmonicState,
    q: f64,
    space: Space,
    spec: &QuadratureSpec,
) -> Result<LogValue> {
    state.validate()?;
    check_q(q)?;
    if state.d() / 2.0 + f64::from(state.l()) * q - 1.0 <= -1.0 {
        return Err(Error::domain(
            "entropic_moment_radial",
            "integrand not integrable at the origin",
        ));
    }
    let lam = state.lambda_in(space);
    let ln_n = ln_laguerre_norm(state, q, spec)?;
    Ok(LogValue::from_log(
        (q - 1.0) * (std::f64::consts::LN_2 + state.d() / 2.0 * lam.ln()) + ln_n,
    ))
}

pub fn renyi_radial(
    state: &HarmonicState,
    q: f64,
    space: Space,
    mode: Mode,
    spec: &QuadratureSpec,
) -> Result<EntropyResult> {
    state.validate()?;
    check_q(q)?;
    if is_shannon_limit(q) {
        let s = shannon::shannon(state, space, mode, spec)?;
        return Ok(EntropyResult::radial(s.radial_part, s.breakdown.clone()).with_flags(&s));
    }
    match mode {
        Mode::Exact => {
            let w = entropic_moment_radial(state, q, space, spec)?;
            Ok(EntropyResult::radial(w.log_mag() / (1.0 - q), None))
        }
        Mode::Asymptotic => {
            let b = radial_asymptotic(state, q, space);
            Ok(EntropyResult::radial(b.total_log, Some(b)))
        }
    }
}

/// `ln c~(n, l, q)`, the constant carried by the radial expansion.
pub(crate) fn ln_c_tilde(n: u32, l: u32, q: f64) -> f64 {
    let (n, l) = (f64::from(n), f64::from(l));
    let two_pi = 2.0 * std::f64::consts::PI;
    let mut v = (q - 1.0) * std::f64::consts::LN_2 + (1.0 - q) / 2.0 * two_pi.ln()
        - q * ln_gamma(n + 1.0)
        - l * q * q.ln();
    if n > 0.0 {
        v += 2.0 * q * n * ((q - 1.0).abs() / q).ln();
    }
    v
}

/// Large-D radial expansion in powers of `ln D`.
pub(crate) fn radial_asymptotic(
    state: &HarmonicState,
    q: f64,
    space: Space,
) -> AsymptoticBreakdown {
    let d = state.d();
    let lam = state.lambda_in(space);
    let log_coeff = q * f64::from(state.n) / (1.0 - q) - 0.5;
    let ln_d = d.ln();
    AsymptoticBreakdown::from_terms([
        ("D log D", 0.5 * d * ln_d),
        ("linear", 0.5 * d * (ln_q_power(q) - (2.0 * lam).ln() - 1.0)),
        ("log D", log_coeff * ln_d),
        (
            "constant",
            ln_c_tilde(state.n, state.l(), q) / (1.0 - q) - log_coeff * std::f64::consts::LN_2,
        ),
    ])
}
