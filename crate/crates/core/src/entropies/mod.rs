//! Rényi, Shannon and Tsallis measures, exact and large-D.
//!
//! Every total splits as radial + angular. Momentum-space results use the
//! position machinery with `lambda -> 1/lambda`; the angular part is the same
//! in both spaces.

pub mod angular;
pub mod radial;
pub mod shannon;
pub mod sums;

use crate::error::{Error, Result};
use crate::laguerre_asym::AsymptoticBreakdown;
use crate::specfun::QuadratureSpec;
use crate::states::{HarmonicState, Space};
use crate::Mode;

pub use angular::{angular_entropic_moment, e_tilde, m_tilde, renyi_angular, ETilde};
pub use radial::{entropic_moment_radial, renyi_radial};
pub use shannon::shannon;
pub use sums::{conjugate_index, uncertainty_sum, UncertaintyReport};

/// `|q - 1|` below this is evaluated as Shannon.
pub const SHANNON_ROUTE_TOL: f64 = 1e-6;

/// Asymptotic results are flagged when their sub-linear terms exceed this share of the value.
const VALIDITY_SHARE: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropySpec {
    pub q: f64,
    pub space: Space,
    pub mode: Mode,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EntropyResult {
    /// Nats.
    pub value: f64,
    pub radial_part: f64,
    pub angular_part: f64,
    pub breakdown: Option<AsymptoticBreakdown>,
    /// Set when the value comes from a conjectured formula.
    pub conjecture: bool,
    pub notes: Vec<String>,
}

impl EntropyResult {
    pub(crate) fn split(radial: f64, angular: f64, breakdown: Option<AsymptoticBreakdown>) -> Self {
        let notes = breakdown
            .as_ref()
            .map(|b| b.notes.clone())
            .unwrap_or_default();
        EntropyResult {
            value: radial + angular,
            radial_part: radial,
            angular_part: angular,
            breakdown,
            conjecture: false,
            notes,
        }
    }

    pub(crate) fn radial(value: f64, breakdown: Option<AsymptoticBreakdown>) -> Self {
        Self::split(value, 0.0, breakdown)
    }

    pub(crate) fn angular(value: f64, breakdown: Option<AsymptoticBreakdown>) -> Self {
        Self::split(0.0, value, breakdown)
    }

    pub(crate) fn with_flags(mut self, other: &EntropyResult) -> Self {
        self.conjecture |= other.conjecture;
        self.notes.extend(other.notes.iter().cloned());
        self
    }
}

pub(crate) fn check_q(q: f64) -> Result<()> {
    if !(q > 0.0) || !q.is_finite() {
        return Err(Error::domain(
            "entropy",
            format!("q = {q} must be positive and finite"),
        ));
    }
    Ok(())
}

pub(crate) fn is_shannon_limit(q: f64) -> bool {
    (q - 1.0).abs() < SHANNON_ROUTE_TOL
}

/// `ln q^{1/(q-1)}`, continuous through `q = 1`.
pub(crate) fn ln_q_power(q: f64) -> f64 {
    let t = q - 1.0;
    if t.abs() < 1e-8 {
        1.0 - t / 2.0
    } else {
        t.ln_1p() / t
    }
}

/// Sums two breakdowns label by label, keeping first-seen label order.
fn add_breakdowns(a: &AsymptoticBreakdown, b: &AsymptoticBreakdown) -> AsymptoticBreakdown {
    let mut terms: Vec<(String, f64)> = a.terms.clone();
    for (label, v) in &b.terms {
        match terms.iter_mut().find(|(l, _)| l == label) {
            Some((_, acc)) => *acc += v,
            None => terms.push((label.clone(), *v)),
        }
    }
    let mut out = AsymptoticBreakdown::from_terms(terms);
    out.notes = a.notes.iter().chain(&b.notes).cloned().collect();
    out
}

fn validity_note(b: &AsymptoticBreakdown, d: usize) -> Option<String> {
    let sub = b.term("log D").unwrap_or(0.0).abs() + b.term("constant").unwrap_or(0.0).abs();
    (sub > VALIDITY_SHARE * b.total_log.abs()).then(|| {
        format!(
            "at D = {d} the log D and constant terms are {:.1}% of the value; the expansion is not yet in its leading regime",
            100.0 * sub / b.total_log.abs().max(f64::MIN_POSITIVE)
        )
    })
}

/// Total Rényi entropy `R_q`; `|q - 1| < 1e-6` is evaluated as Shannon.
pub fn renyi_total(
    state: &HarmonicState,
    q: f64,
    space: Space,
    mode: Mode,
    spec: &QuadratureSpec,
) -> Result<EntropyResult> {
    state.validate()?;
    check_q(q)?;
    if is_shannon_limit(q) {
        return shannon(state, space, mode, spec);
    }
    match mode {
        Mode::Exact => {
            let radial = radial::renyi_radial(state, q, space, Mode::Exact, spec)?.value;
            let angular = angular::angular_entropic_moment(state, q, spec)? / (1.0 - q);
            Ok(EntropyResult::split(radial, angular, None))
        }
        Mode::Asymptotic => {
            let r = radial::radial_asymptotic(state, q, space);
            let a = angular::angular_asymptotic(state, q);
            let mut total = add_breakdowns(&r, &a);
            if let Some(note) = validity_note(&total, state.dim) {
                total.notes.push(note);
            }
            Ok(EntropyResult::split(r.total_log, a.total_log, Some(total)))
        }
    }
}

pub fn renyi(
    state: &HarmonicState,
    spec: &EntropySpec,
    quad: &QuadratureSpec,
) -> Result<EntropyResult> {
    renyi_total(state, spec.q, spec.space, spec.mode, quad)
}

/// `T_q = (e^{(1-q) R_q} - 1) / (1 - q)`.
pub fn tsallis_from_renyi(renyi_value: f64, q: f64) -> Result<f64> {
    check_q(q)?;
    if q == 1.0 {
        return Err(Error::domain(
            "tsallis_from_renyi",
            "q = 1 has no Tsallis form; use the Shannon value",
        ));
    }
    Ok(((1.0 - q) * renyi_value).exp_m1() / (1.0 - q))
}

/// Which exponential of `R_2` is reported as disequilibrium.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DisequilibriumConvention {
    /// `int rho^2 = exp(-R_2)`.
    #[default]
    Overlap,
    /// `exp(+R_2)`, the sign found in some texts.
    PositiveExponent,
}

pub fn disequilibrium(state: &HarmonicState, space: Space, spec: &QuadratureSpec) -> Result<f64> {
    disequilibrium_with(state, space, DisequilibriumConvention::Overlap, spec)
}

pub fn disequilibrium_with(
    state: &HarmonicState,
    space: Space,
    convention: DisequilibriumConvention,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let r2 = renyi_total(state, 2.0, space, Mode::Exact, spec)?.value;
    Ok(match convention {
        DisequilibriumConvention::Overlap => (-r2).exp(),
        DisequilibriumConvention::PositiveExponent => r2.exp(),
    })
}
