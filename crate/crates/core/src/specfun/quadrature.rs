//! Adaptive Gauss-Legendre quadrature carried in log space.
//!
//! The integrand returns a [`LogValue`]. Panels are laid between the caller's
//! split points (integrand zeros, kinks) and on a geometric grid around the
//! peak; semi-infinite domains grow a doubling tail grid until panel
//! contributions drop below `tail_cutoff_log` relative to the running total.
//! Each panel is scored by comparing one 15-point rule on the whole panel with
//! two on its halves, and the worst panel is bisected until the summed error
//! estimate meets the target relative to `integral |f|`.

use std::sync::OnceLock;

use super::logvalue::{log_sum, LogValue};
use crate::error::{Error, Result};

const GL_ORDER: usize = 15;
const MAX_TAIL_PANELS: usize = 2000;
const INITIAL_RIGHT_STEPS: i32 = 3;

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureSpec {
    pub target_rel_tol: f64,
    pub max_panels: usize,
    /// Interior points where the integrand is non-smooth (zeros of `|p|^s`).
    pub split_points: Vec<f64>,
    /// Tail growth stops once a panel is below `exp(tail_cutoff_log)` times the total.
    pub tail_cutoff_log: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            target_rel_tol: 1e-10,
            max_panels: 4096,
            split_points: Vec::new(),
            tail_cutoff_log: -45.0,
        }
    }
}

impl QuadratureSpec {
    pub fn with_tol(target_rel_tol: f64) -> Self {
        QuadratureSpec {
            target_rel_tol,
            ..Default::default()
        }
    }

    /// Same settings with the split points replaced.
    pub fn with_splits(&self, split_points: Vec<f64>) -> Self {
        QuadratureSpec {
            split_points,
            ..self.clone()
        }
    }

    /// Same settings with the tolerance tightened to at most `tol`.
    pub fn tightened(&self, tol: f64) -> Self {
        QuadratureSpec {
            target_rel_tol: self.target_rel_tol.min(tol),
            ..self.clone()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.target_rel_tol > 0.0 && self.target_rel_tol < 1.0) {
            return Err(Error::domain(
                "QuadratureSpec",
                format!(
                    "target_rel_tol must lie in (0, 1), got {}",
                    self.target_rel_tol
                ),
            ));
        }
        if self.max_panels == 0 {
            return Err(Error::domain(
                "QuadratureSpec",
                "max_panels must be positive",
            ));
        }
        if !(self.tail_cutoff_log < 0.0) {
            return Err(Error::domain(
                "QuadratureSpec",
                "tail_cutoff_log must be negative",
            ));
        }
        if self.split_points.windows(2).any(|w| !(w[0] <= w[1])) {
            return Err(Error::domain(
                "QuadratureSpec",
                "split_points must be sorted ascending",
            ));
        }
        Ok(())
    }
}

/// Integration range; `upper = None` is `+inf`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lower: f64,
    pub upper: Option<f64>,
}

impl Interval {
    pub fn finite(lower: f64, upper: f64) -> Self {
        Interval {
            lower,
            upper: Some(upper),
        }
    }

    pub fn semi_infinite(lower: f64) -> Self {
        Interval { lower, upper: None }
    }

    fn contains_interior(&self, x: f64) -> bool {
        x > self.lower && self.upper.is_none_or(|b| x < b)
    }
}

/// Where the integrand's mass sits: peak location and a width scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeakHint {
    pub location: f64,
    pub width: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: LogValue,
    /// Estimate of `integral |f|`.
    pub abs_value: LogValue,
    /// Error estimate relative to `abs_value`.
    pub rel_error: f64,
    pub panels: usize,
}

/// Log-space integral of `f` over `domain`. Pass `peak = None` to locate the
/// peak by sampling.
pub fn integrate_log<F>(
    f: F,
    domain: Interval,
    spec: &QuadratureSpec,
    peak: Option<PeakHint>,
) -> Result<LogValue>
where
    F: Fn(f64) -> LogValue,
{
    integrate_log_detailed(f, domain, spec, peak).map(|r| r.value)
}

pub fn integrate_log_detailed<F>(
    f: F,
    domain: Interval,
    spec: &QuadratureSpec,
    peak: Option<PeakHint>,
) -> Result<Integral>
where
    F: Fn(f64) -> LogValue,
{
    spec.validate()?;
    if !domain.lower.is_finite()
        || domain
            .upper
            .is_some_and(|b| !(b > domain.lower) || !b.is_finite())
    {
        return Err(Error::domain(
            "integrate_log",
            format!("bad domain {domain:?}"),
        ));
    }
    let peak = match peak {
        Some(p) if p.location.is_finite() && p.width.is_finite() && p.width > 0.0 => p,
        _ => find_peak(&f, domain),
    };
    let points = breakpoints(domain, peak, &spec.split_points);

    let mut panels = Vec::with_capacity(points.len() * 2);
    for w in points.windows(2) {
        panels.push(Panel::new(&f, w[0], w[1], None)?);
    }
    if domain.upper.is_none() {
        grow_tail(&f, &mut panels, peak.width, spec)?;
    }

    loop {
        let (abs_total, err_total) = totals(&panels);
        let converged = err_total.is_zero()
            || abs_total.is_zero()
            || err_total.log_mag() - abs_total.log_mag() <= spec.target_rel_tol.ln();
        if converged {
            return Ok(finish(&panels, abs_total, err_total));
        }
        let estimate = (err_total.log_mag() - abs_total.log_mag()).exp();
        if panels.len() >= spec.max_panels {
            return Err(Error::Convergence {
                integral: "integrate_log".into(),
                panels: panels.len(),
                estimate,
            });
        }
        let worst = panels
            .iter()
            .enumerate()
            .filter(|(_, p)| p.splittable())
            .max_by(|(_, p), (_, q)| p.err.cmp_abs(&q.err))
            .map(|(i, _)| i);
        let Some(idx) = worst else {
            return Err(Error::Convergence {
                integral: "integrate_log".into(),
                panels: panels.len(),
                estimate,
            });
        };
        let p = panels.swap_remove(idx);
        let mid = 0.5 * (p.a + p.b);
        panels.push(Panel::new(&f, p.a, mid, Some(p.halves[0]))?);
        panels.push(Panel::new(&f, mid, p.b, Some(p.halves[1]))?);
    }
}

#[derive(Debug, Clone, Copy)]
struct Estimate {
    value: LogValue,
    abs: LogValue,
}

#[derive(Debug, Clone)]
struct Panel {
    a: f64,
    b: f64,
    halves: [Estimate; 2],
    value: LogValue,
    abs: LogValue,
    err: LogValue,
}

impl Panel {
    fn new<F: Fn(f64) -> LogValue>(
        f: &F,
        a: f64,
        b: f64,
        whole: Option<Estimate>,
    ) -> Result<Panel> {
        let whole = match whole {
            Some(w) => w,
            None => gauss_legendre(f, a, b)?,
        };
        let mid = 0.5 * (a + b);
        let halves = [gauss_legendre(f, a, mid)?, gauss_legendre(f, mid, b)?];
        let value = log_sum(&[halves[0].value, halves[1].value]);
        let abs = log_sum(&[halves[0].abs, halves[1].abs]);
        let err = whole.value.add(&(value * LogValue::from_f64(-1.0))).abs();
        Ok(Panel {
            a,
            b,
            halves,
            value,
            abs,
            err,
        })
    }

    fn splittable(&self) -> bool {
        let mid = 0.5 * (self.a + self.b);
        mid > self.a && mid < self.b && !self.err.is_zero()
    }
}

fn gauss_legendre<F: Fn(f64) -> LogValue>(f: &F, a: f64, b: f64) -> Result<Estimate> {
    let (nodes, weights) = gl_rule();
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let log_h = h.ln();
    let mut terms = [LogValue::ZERO; GL_ORDER];
    let mut abs_terms = [LogValue::ZERO; GL_ORDER];
    for i in 0..GL_ORDER {
        let x = c + h * nodes[i];
        let v = f(x);
        if v.log_mag().is_nan() || v.log_mag() == f64::INFINITY {
            return Err(Error::domain(
                "integrate_log",
                format!("integrand is not finite at x = {x}"),
            ));
        }
        terms[i] = v.scale_log(weights[i].ln() + log_h);
        abs_terms[i] = terms[i].abs();
    }
    Ok(Estimate {
        value: log_sum(&terms),
        abs: log_sum(&abs_terms),
    })
}

fn totals(panels: &[Panel]) -> (LogValue, LogValue) {
    let abs: Vec<LogValue> = panels.iter().map(|p| p.abs).collect();
    let err: Vec<LogValue> = panels.iter().map(|p| p.err).collect();
    (log_sum(&abs), log_sum(&err))
}

fn finish(panels: &[Panel], abs_total: LogValue, err_total: LogValue) -> Integral {
    let values: Vec<LogValue> = panels.iter().map(|p| p.value).collect();
    let rel_error = if abs_total.is_zero() {
        0.0
    } else {
        (err_total.log_mag() - abs_total.log_mag()).exp()
    };
    Integral {
        value: log_sum(&values),
        abs_value: abs_total,
        rel_error,
        panels: panels.len(),
    }
}

fn breakpoints(domain: Interval, peak: PeakHint, splits: &[f64]) -> Vec<f64> {
    let a = domain.lower;
    let c = match domain.upper {
        Some(b) => peak.location.clamp(a, b),
        None => peak.location.max(a),
    };
    let w = peak.width;
    let mut pts = vec![a, c];
    pts.extend(
        splits
            .iter()
            .copied()
            .filter(|&s| domain.contains_interior(s)),
    );
    let mut step = w;
    while c - step > a {
        pts.push(c - step);
        step *= 2.0;
    }
    match domain.upper {
        Some(b) => {
            let mut step = w;
            while c + step < b {
                pts.push(c + step);
                step *= 2.0;
            }
            pts.push(b);
        }
        None => {
            for k in 0..=INITIAL_RIGHT_STEPS {
                pts.push(c + w * 2f64.powi(k));
            }
        }
    }
    pts.sort_by(|x, y| x.partial_cmp(y).expect("finite breakpoints"));
    let mut out: Vec<f64> = Vec::with_capacity(pts.len());
    for x in pts {
        match out.last() {
            Some(&last) if x - last <= 1e-13 * last.abs().max(x.abs()).max(w) => {}
            _ => out.push(x),
        }
    }
    out
}

fn grow_tail<F: Fn(f64) -> LogValue>(
    f: &F,
    panels: &mut Vec<Panel>,
    width: f64,
    spec: &QuadratureSpec,
) -> Result<()> {
    let mut start = panels.last().map_or(0.0, |p| p.b);
    let mut step = width * 2f64.powi(INITIAL_RIGHT_STEPS + 1);
    let mut running = log_sum(&panels.iter().map(|p| p.abs).collect::<Vec<_>>());
    let mut small_in_a_row = 0;
    for _ in 0..MAX_TAIL_PANELS {
        let end = start + step;
        if !end.is_finite() {
            break;
        }
        let panel = Panel::new(f, start, end, None)?;
        running = running.add(&panel.abs);
        let negligible =
            panel.abs.is_zero() || panel.abs.log_mag() - running.log_mag() < spec.tail_cutoff_log;
        panels.push(panel);
        if negligible {
            small_in_a_row += 1;
            if small_in_a_row >= 2 {
                return Ok(());
            }
        } else {
            small_in_a_row = 0;
        }
        start = end;
        step *= 2.0;
    }
    Err(Error::Convergence {
        integral: "integrate_log (tail)".into(),
        panels: panels.len(),
        estimate: f64::INFINITY,
    })
}

fn find_peak<F: Fn(f64) -> LogValue>(f: &F, domain: Interval) -> PeakHint {
    let a = domain.lower;
    let candidates: Vec<f64> = match domain.upper {
        Some(b) => (1..64).map(|i| a + (b - a) * f64::from(i) / 64.0).collect(),
        None => {
            let base = a.abs().max(1.0);
            (-30..=60).map(|k| a + base * 2f64.powi(k)).collect()
        }
    };
    let mut best = 0;
    for (i, &x) in candidates.iter().enumerate() {
        if f(x).log_mag() > f(candidates[best]).log_mag() {
            best = i;
        }
    }
    let location = candidates[best];
    let left = if best > 0 { candidates[best - 1] } else { a };
    let right = candidates
        .get(best + 1)
        .copied()
        .unwrap_or(location + (location - left));
    let width = (0.5 * (right - left)).max(f64::MIN_POSITIVE);
    PeakHint { location, width }
}

/// 15-point Gauss-Legendre nodes and weights on [-1, 1].
fn gl_rule() -> &'static ([f64; GL_ORDER], [f64; GL_ORDER]) {
    static RULE: OnceLock<([f64; GL_ORDER], [f64; GL_ORDER])> = OnceLock::new();
    RULE.get_or_init(|| {
        let n = GL_ORDER;
        let mut nodes = [0.0; GL_ORDER];
        let mut weights = [0.0; GL_ORDER];
        for i in 0..n {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            dp = if d != 0.0 { d } else { dp };
            nodes[n - 1 - i] = x;
            weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
        (nodes, weights)
    })
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}
