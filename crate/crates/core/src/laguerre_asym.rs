//! Rényi-like Laguerre functionals
//! `J1(sigma, rate, kappa, m; alpha) = int x^{alpha+sigma-1} e^{-rate x} |L_m^alpha(x)|^kappa dx`
//! by quadrature, and their large-`alpha` expansions.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::specfun::gamma::ln_gamma;
use crate::specfun::poly::{laguerre, laguerre_roots};
use crate::specfun::quadrature::{integrate_log, Interval, PeakHint, QuadratureSpec};
use crate::specfun::LogValue;

/// Below this `|rate - 1|` the expansion is flagged as unreliable.
pub const DEFAULT_NEAR_ONE: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct J1Params {
    pub sigma: f64,
    /// Exponential rate of the weight (kept apart from the oscillator strength).
    pub rate: f64,
    pub kappa: f64,
    pub m: u32,
    pub alpha: f64,
}

impl J1Params {
    pub fn new(sigma: f64, rate: f64, kappa: f64, m: u32, alpha: f64) -> Self {
        J1Params {
            sigma,
            rate,
            kappa,
            m,
            alpha,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let all_finite = [self.sigma, self.rate, self.kappa, self.alpha]
            .iter()
            .all(|v| v.is_finite());
        if !all_finite {
            return Err(Error::domain(
                "J1Params",
                format!("non-finite parameter in {self:?}"),
            ));
        }
        if !(self.rate > 0.0) || !(self.kappa > 0.0) || !(self.alpha > -1.0) {
            return Err(Error::domain(
                "J1Params",
                format!("need rate > 0, kappa > 0, alpha > -1; got {self:?}"),
            ));
        }
        if !(self.alpha + self.sigma > 0.0) {
            return Err(Error::domain(
                "J1Params",
                format!(
                    "alpha + sigma = {} must be positive",
                    self.alpha + self.sigma
                ),
            ));
        }
        Ok(())
    }
}

/// Log of an asymptotic formula split into labelled additive pieces.
#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticBreakdown {
    pub total_log: f64,
    pub terms: Vec<(String, f64)>,
    /// Validity warnings attached to this evaluation.
    pub notes: Vec<String>,
}

impl AsymptoticBreakdown {
    pub fn from_terms<S: Into<String>>(terms: impl IntoIterator<Item = (S, f64)>) -> Self {
        let terms: Vec<(String, f64)> = terms.into_iter().map(|(l, v)| (l.into(), v)).collect();
        let total_log = terms.iter().map(|(_, v)| v).sum();
        AsymptoticBreakdown {
            total_log,
            terms,
            notes: Vec::new(),
        }
    }

    pub fn term(&self, label: &str) -> Option<f64> {
        self.terms.iter().find(|(l, _)| l == label).map(|(_, v)| *v)
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    /// Concatenates two breakdowns, prefixing labels.
    pub fn merged(
        a: &AsymptoticBreakdown,
        a_prefix: &str,
        b: &AsymptoticBreakdown,
        b_prefix: &str,
    ) -> Self {
        let terms = a
            .terms
            .iter()
            .map(|(l, v)| (format!("{a_prefix}{l}"), *v))
            .chain(b.terms.iter().map(|(l, v)| (format!("{b_prefix}{l}"), *v)));
        let mut out = AsymptoticBreakdown::from_terms(terms);
        out.notes = a.notes.iter().chain(&b.notes).cloned().collect();
        out
    }
}

/// Quadrature value of `J1`, split at the Laguerre zeros.
pub fn j1_exact(p: &J1Params, spec: &QuadratureSpec) -> Result<LogValue> {
    p.validate()?;
    let roots = if p.m > 0 {
        laguerre_roots(p.m as usize, p.alpha)?
    } else {
        Vec::new()
    };
    let spec = spec.with_splits(roots);
    let a = p.alpha + p.sigma - 1.0;
    let shift = a.max(0.0) + p.kappa * f64::from(p.m);
    let peak = PeakHint {
        location: (shift / p.rate).max(1e-3),
        width: shift.max(1.0).sqrt() / p.rate,
    };
    let (m, alpha, kappa, rate) = (p.m as usize, p.alpha, p.kappa, p.rate);
    integrate_log(
        |x: f64| {
            laguerre(m, alpha, x)
                .abs_powf(kappa)
                .scale_log(a * x.ln() - rate * x)
        },
        Interval::semi_infinite(0.0),
        &spec,
        Some(peak),
    )
    .map_err(|e| {
        e.in_integral(format!(
            "J1(sigma={}, rate={}, kappa={}, m={}; alpha={})",
            p.sigma, p.rate, p.kappa, p.m, p.alpha
        ))
    })
}

/// First correction coefficient `D1` of the large-`alpha` series.
///
/// Second-order Laplace expansion about `x = alpha / rate`; agrees with the
/// literature polynomial ([`d1_coefficient_printed`]) for `m = 0` and differs
/// by `kappa m (12 rate - 6 - 6 m) / (12 (rate - 1)^2)` otherwise.
pub fn d1_coefficient(kappa: f64, m: f64, sigma: f64, rate: f64) -> f64 {
    let (k, s, r) = (kappa, sigma, rate);
    let poly =
        1.0 - 12.0 * k * m * s * r + 6.0 * s * s * r * r - 12.0 * s * s * r - 6.0 * s * r * r
            + 12.0 * s * r
            + 6.0 * k * k * m * m
            + 12.0 * k * m * s
            - 12.0 * k * m * m * r
            + 6.0 * k * m * r * r
            + 6.0 * k * m * m * r * r
            + r * r
            + 6.0 * s * s
            - 2.0 * r
            - 6.0 * s
            - 6.0 * k * m;
    poly / (12.0 * (r - 1.0) * (r - 1.0))
}

/// `D1` polynomial as printed in the literature, kept for comparison.
pub fn d1_coefficient_printed(kappa: f64, m: f64, sigma: f64, rate: f64) -> f64 {
    let (k, s, r) = (kappa, sigma, rate);
    let poly =
        1.0 - 12.0 * k * m * s * r + 6.0 * s * s * r * r - 12.0 * s * s * r - 6.0 * s * r * r
            + 12.0 * s * r
            + 6.0 * k * k * m * m
            + 12.0 * k * m * s
            - 12.0 * k * m * m * r
            - 12.0 * k * m * r
            + 6.0 * k * m * r * r
            + 6.0 * k * m * m * r * r
            + r * r
            + 6.0 * s * s
            - 2.0 * r
            - 6.0 * s
            + 6.0 * k * m * m;
    poly / (12.0 * (r - 1.0) * (r - 1.0))
}

/// Large-`alpha` expansion of `J1` through `order` (0 or 1) correction terms.
pub fn j1_asym(p: &J1Params, order: u32) -> Result<AsymptoticBreakdown> {
    j1_asym_with(p, order, DEFAULT_NEAR_ONE)
}

/// As [`j1_asym`] with a custom `|rate - 1|` warning threshold.
pub fn j1_asym_with(p: &J1Params, order: u32, near_one: f64) -> Result<AsymptoticBreakdown> {
    p.validate()?;
    if order > 1 {
        return Err(Error::domain(
            "j1_asym",
            format!("only orders 0 and 1 are available, got {order}"),
        ));
    }
    if p.rate == 1.0 {
        return Err(Error::domain(
            "j1_asym",
            "rate = 1 is the corollary case; use corollary_asym",
        ));
    }
    if !(p.alpha > 0.0) {
        return Err(Error::domain(
            "j1_asym",
            format!("alpha = {} must be positive", p.alpha),
        ));
    }
    let (a, s, k, r) = (p.alpha, p.sigma, p.kappa, p.rate);
    let km = k * f64::from(p.m);
    let ln_a = a.ln();
    let mut terms = vec![
        ("alpha log alpha", a * ln_a),
        ("linear", -a - a * r.ln()),
        ("log alpha", (s + km - 0.5) * ln_a),
        (
            "constant",
            -(s + km) * r.ln() + km * (r - 1.0).abs().ln() + 0.5 * (2.0 * PI).ln()
                - k * ln_gamma(f64::from(p.m) + 1.0),
        ),
    ];
    if order == 1 {
        let factor = 1.0 + d1_coefficient(k, f64::from(p.m), s, r) / a;
        if !(factor > 0.0) {
            return Err(Error::domain(
                "j1_asym",
                format!(
                    "1 + D1/alpha = {factor} is not positive; alpha too small for the correction"
                ),
            ));
        }
        terms.push(("D1 correction", factor.ln()));
    }
    let mut out = AsymptoticBreakdown::from_terms(terms);
    if (r - 1.0).abs() < near_one {
        out = out.with_note(format!(
            "|rate - 1| = {:.3e} is below {near_one}; the |rate-1|^(kappa m) factor makes the expansion slow",
            (r - 1.0).abs()
        ));
    }
    Ok(out)
}

/// Leading large-`alpha` behaviour of `J1(sigma, 1, 2, m; alpha)`.
pub fn corollary_asym(sigma: f64, m: u32, alpha: f64) -> Result<AsymptoticBreakdown> {
    if !(alpha > 0.0) || !sigma.is_finite() {
        return Err(Error::domain(
            "corollary_asym",
            format!("need alpha > 0 and finite sigma, got alpha = {alpha}, sigma = {sigma}"),
        ));
    }
    let ln_a = alpha.ln();
    Ok(AsymptoticBreakdown::from_terms([
        ("alpha log alpha", alpha * ln_a),
        ("linear", -alpha),
        ("log alpha", (sigma + f64::from(m) - 0.5) * ln_a),
        (
            "constant",
            0.5 * (2.0 * PI).ln() - ln_gamma(f64::from(m) + 1.0),
        ),
    ]))
}
