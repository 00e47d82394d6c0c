//! Exact-vs-asymptotic comparisons over a grid and log-log error-order fits.

use statrs::distribution::{ContinuousCDF, StudentsT};

use crate::entropies::{angular::renyi_angular, radial::renyi_radial, renyi_total, shannon};
use crate::error::{Error, Result};
use crate::laguerre_asym::{j1_asym, j1_exact, J1Params};
use crate::moments::{radial_moment_log, MomentQuery};
use crate::specfun::QuadratureSpec;
use crate::states::{HarmonicState, Space};
use crate::Mode;

/// What is compared along a dimension grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Quantity {
    Moment { order: f64, space: Space },
    RenyiTotal { q: f64, space: Space },
    RenyiRadial { q: f64, space: Space },
    RenyiAngular { q: f64 },
    Shannon { space: Space },
}

impl Quantity {
    pub fn name(&self) -> &'static str {
        match self {
            Quantity::Moment { .. } => "moment",
            Quantity::RenyiTotal { .. } => "renyi_total",
            Quantity::RenyiRadial { .. } => "renyi_radial",
            Quantity::RenyiAngular { .. } => "renyi_angular",
            Quantity::Shannon { .. } => "shannon",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergencePoint {
    pub grid_value: f64,
    pub exact: f64,
    pub asym: f64,
    /// `|asym - exact| / |exact|`.
    pub rel_err: f64,
}

impl ConvergencePoint {
    pub fn new(grid_value: f64, exact: f64, asym: f64) -> Self {
        ConvergencePoint {
            grid_value,
            exact,
            asym,
            rel_err: rel_err(exact, asym),
        }
    }
}

pub fn rel_err(exact: f64, asym: f64) -> f64 {
    if exact == asym {
        0.0
    } else {
        (asym - exact).abs() / exact.abs()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlopeFit {
    pub slope: f64,
    pub intercept: f64,
    /// 95% half-width of the slope; `None` with only two points.
    pub half_width: Option<f64>,
}

impl SlopeFit {
    pub fn contains(&self, target: f64, tol: f64) -> bool {
        (self.slope - target).abs() <= tol
    }
}

/// Ordinary least squares of `ln|y|` on `ln x`. Points with `x <= 0` or `y == 0` are skipped.
pub fn fit_log_log(xs: &[f64], ys: &[f64]) -> Option<SlopeFit> {
    let pts: Vec<(f64, f64)> = xs
        .iter()
        .zip(ys)
        .filter(|(x, y)| **x > 0.0 && **y != 0.0 && y.is_finite())
        .map(|(x, y)| (x.ln(), y.abs().ln()))
        .collect();
    let n = pts.len();
    if n < 2 {
        return None;
    }
    let nf = n as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / nf;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / nf;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let half_width = (n > 2).then(|| {
        let sse: f64 = pts
            .iter()
            .map(|p| (p.1 - intercept - slope * p.0).powi(2))
            .sum();
        let df = nf - 2.0;
        let se = (sse / df / sxx).sqrt();
        let t = StudentsT::new(0.0, 1.0, df)
            .map(|d| d.inverse_cdf(0.975))
            .unwrap_or(f64::NAN);
        t * se
    });
    Some(SlopeFit {
        slope,
        intercept,
        half_width,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub label: String,
    pub points: Vec<ConvergencePoint>,
    /// Fit of `rel_err` against the grid value.
    pub fit: Option<SlopeFit>,
}

impl ConvergenceReport {
    pub fn from_points(label: impl Into<String>, points: Vec<ConvergencePoint>) -> Self {
        let xs: Vec<f64> = points.iter().map(|p| p.grid_value).collect();
        let ys: Vec<f64> = points.iter().map(|p| p.rel_err).collect();
        ConvergenceReport {
            label: label.into(),
            fit: fit_log_log(&xs, &ys),
            points,
        }
    }

    pub fn rel_errs(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.rel_err).collect()
    }

    pub fn strictly_decreasing(&self) -> bool {
        self.points.windows(2).all(|w| w[1].rel_err < w[0].rel_err)
    }
}

/// Exact and asymptotic value of `quantity` for one state.
pub fn evaluate(
    state: &HarmonicState,
    quantity: Quantity,
    spec: &QuadratureSpec,
) -> Result<ConvergencePoint> {
    let (exact, asym) = match quantity {
        Quantity::Moment { order, space } => {
            let m = |mode| {
                radial_moment_log(&MomentQuery::new(state.clone(), order, space, mode), spec)
                    .map(f64::exp)
            };
            (m(Mode::Exact)?, m(Mode::Asymptotic)?)
        }
        Quantity::RenyiTotal { q, space } => (
            renyi_total(state, q, space, Mode::Exact, spec)?.value,
            renyi_total(state, q, space, Mode::Asymptotic, spec)?.value,
        ),
        Quantity::RenyiRadial { q, space } => (
            renyi_radial(state, q, space, Mode::Exact, spec)?.value,
            renyi_radial(state, q, space, Mode::Asymptotic, spec)?.value,
        ),
        Quantity::RenyiAngular { q } => (
            renyi_angular(state, q, Mode::Exact, spec)?.value,
            renyi_angular(state, q, Mode::Asymptotic, spec)?.value,
        ),
        Quantity::Shannon { space } => (
            shannon(state, space, Mode::Exact, spec)?.value,
            shannon(state, space, Mode::Asymptotic, spec)?.value,
        ),
    };
    Ok(ConvergencePoint::new(state.d(), exact, asym))
}

/// Runs `quantity` over `dims`, resizing `template` with [`HarmonicState::with_dim`].
pub fn converge_dims(
    template: &HarmonicState,
    quantity: Quantity,
    dims: &[usize],
    spec: &QuadratureSpec,
) -> Result<ConvergenceReport> {
    if dims.is_empty() {
        return Err(Error::domain("converge_dims", "empty dimension grid"));
    }
    let points = dims
        .iter()
        .map(|&d| evaluate(&template.with_dim(d)?, quantity, spec))
        .collect::<Result<Vec<_>>>()?;
    Ok(ConvergenceReport::from_points(quantity.name(), points))
}

/// `|J1_exact / J1_asym - 1|` at one `alpha`.
pub fn j1_point(params: &J1Params, order: u32, spec: &QuadratureSpec) -> Result<ConvergencePoint> {
    let exact = j1_exact(params, spec)?.log_mag();
    let asym = j1_asym(params, order)?.total_log;
    Ok(ConvergencePoint {
        grid_value: params.alpha,
        exact,
        asym,
        rel_err: (asym - exact).exp_m1().abs(),
    })
}

pub fn converge_j1(
    params: &J1Params,
    order: u32,
    alphas: &[f64],
    spec: &QuadratureSpec,
) -> Result<ConvergenceReport> {
    let points = alphas
        .iter()
        .map(|&a| {
            j1_point(
                &J1Params {
                    alpha: a,
                    ..*params
                },
                order,
                spec,
            )
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ConvergenceReport::from_points(
        format!("j1_order{order}"),
        points,
    ))
}
