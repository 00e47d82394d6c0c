//! D-dimensional oscillator states `(n, l, {mu})` with a run-length encoded
//! hyperquantum chain.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::specfun::gamma::ln_gamma;
use crate::specfun::poly::laguerre;
use crate::specfun::LogValue;

/// Position or momentum space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Space {
    Position,
    Momentum,
}

impl Space {
    pub fn as_str(self) -> &'static str {
        match self {
            Space::Position => "position",
            Space::Momentum => "momentum",
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Space {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "position" | "pos" | "r" => Ok(Space::Position),
            "momentum" | "mom" | "p" => Ok(Space::Momentum),
            other => Err(Error::Parse {
                input: other.to_string(),
                detail: "expected `position` or `momentum`".into(),
            }),
        }
    }
}

/// `count` consecutive chain entries equal to `value`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MuRun {
    pub value: i64,
    pub count: usize,
}

impl MuRun {
    pub fn new(value: i64, count: usize) -> Self {
        MuRun { value, count }
    }
}

/// Stationary state of the oscillator `V(r) = lambda^2 r^2 / 2` in `dim` dimensions.
///
/// `runs` encodes `mu_1 .. mu_{D-1}`; `l = mu_1`. Only the final chain entry
/// (the magnetic number `m`) may be negative.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicState {
    pub dim: usize,
    pub lambda: f64,
    pub n: u32,
    pub runs: Vec<MuRun>,
}

/// Family decomposition of a chain: `boundaries[i]` is the chain index of the
/// last member of family `i` and `sizes[i]` its number of members.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MuFamilies {
    pub boundaries: Vec<usize>,
    pub sizes: Vec<usize>,
}

impl MuFamilies {
    pub fn count(&self) -> usize {
        self.sizes.len()
    }
}

impl HarmonicState {
    /// Builds and validates a state; adjacent runs with equal values are merged.
    pub fn new(dim: usize, lambda: f64, n: u32, runs: Vec<MuRun>) -> Result<Self> {
        let state = HarmonicState {
            dim,
            lambda,
            n,
            runs,
        };
        state.validate()?;
        Ok(state.normalized())
    }

    pub fn from_chain(dim: usize, lambda: f64, n: u32, chain: &[i64]) -> Result<Self> {
        let mut runs: Vec<MuRun> = Vec::new();
        for &v in chain {
            match runs.last_mut() {
                Some(r) if r.value == v => r.count += 1,
                _ => runs.push(MuRun::new(v, 1)),
            }
        }
        HarmonicState::new(dim, lambda, n, runs)
    }

    pub fn ground(dim: usize, lambda: f64) -> Result<Self> {
        Self::ns(dim, lambda, 0)
    }

    /// `(ns)` state: all `mu = 0`.
    pub fn ns(dim: usize, lambda: f64, n: u32) -> Result<Self> {
        HarmonicState::new(dim, lambda, n, vec![MuRun::new(0, dim.saturating_sub(1))])
    }

    /// Circular state: `l = n - 1` and every `mu = n - 1`; needs `n >= 1`.
    pub fn circular(dim: usize, lambda: f64, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidState {
                index: 0,
                detail: "circular states need n >= 1".into(),
            });
        }
        let v = i64::from(n) - 1;
        HarmonicState::new(dim, lambda, n, vec![MuRun::new(v, dim.saturating_sub(1))])
    }

    /// Checks every invariant; the error names the first offending chain position (1-based).
    pub fn validate(&self) -> Result<()> {
        let bad = |index: usize, detail: String| Err(Error::InvalidState { index, detail });
        if self.dim < 2 {
            return bad(0, format!("dimension must be at least 2, got {}", self.dim));
        }
        if !(self.lambda > 0.0) || !self.lambda.is_finite() {
            return bad(
                0,
                format!("lambda must be positive and finite, got {}", self.lambda),
            );
        }
        if self.runs.is_empty() {
            return bad(0, "empty mu chain".into());
        }
        let mut position = 0usize;
        let last_run = self.runs.len() - 1;
        for (i, run) in self.runs.iter().enumerate() {
            if run.count == 0 {
                return bad(position + 1, format!("run {} has zero multiplicity", i + 1));
            }
            if run.value < 0 {
                let is_final_entry = i == last_run && run.count == 1;
                if !is_final_entry || (position == 0 && self.dim > 2) {
                    return bad(
                        position + 1,
                        format!(
                            "mu_{} = {} is negative; only the last entry may be",
                            position + 1,
                            run.value
                        ),
                    );
                }
            }
            if i > 0 {
                let prev = self.runs[i - 1].value;
                if run.value > prev || run.value.abs() > prev {
                    return bad(
                        position,
                        format!(
                            "mu_{} = {prev} < |mu_{}| = {}: chain must be non-increasing",
                            position,
                            position + 1,
                            run.value.abs()
                        ),
                    );
                }
            }
            position += run.count;
        }
        if position != self.dim - 1 {
            return bad(
                position.min(self.dim - 1),
                format!(
                    "multiplicities sum to {position}, expected D - 1 = {}",
                    self.dim - 1
                ),
            );
        }
        Ok(())
    }

    fn normalized(mut self) -> Self {
        let mut merged: Vec<MuRun> = Vec::with_capacity(self.runs.len());
        for r in self.runs {
            match merged.last_mut() {
                Some(last) if last.value == r.value => last.count += r.count,
                _ => merged.push(r),
            }
        }
        self.runs = merged;
        self
    }

    pub fn l(&self) -> u32 {
        self.runs[0].value.unsigned_abs() as u32
    }

    /// Final chain entry `mu_{D-1}`.
    pub fn m(&self) -> i64 {
        self.runs[self.runs.len() - 1].value
    }

    /// Laguerre parameter `alpha = l + D/2 - 1`.
    pub fn alpha(&self) -> f64 {
        f64::from(self.l()) + self.dim as f64 / 2.0 - 1.0
    }

    pub fn d(&self) -> f64 {
        self.dim as f64
    }

    /// `E = lambda (2n + l + D/2)`.
    pub fn energy(&self) -> f64 {
        self.lambda * (2.0 * f64::from(self.n) + f64::from(self.l()) + self.d() / 2.0)
    }

    /// Flat chain `mu_1 .. mu_{D-1}`.
    pub fn chain(&self) -> Vec<i64> {
        self.runs
            .iter()
            .flat_map(|r| std::iter::repeat_n(r.value, r.count))
            .collect()
    }

    pub fn mu_families(&self) -> MuFamilies {
        let mut boundaries = Vec::with_capacity(self.runs.len());
        let mut sizes = Vec::with_capacity(self.runs.len());
        let mut k = 0;
        for r in &self.runs {
            k += r.count;
            boundaries.push(k);
            sizes.push(r.count);
        }
        MuFamilies { boundaries, sizes }
    }

    /// Runs with the final entry replaced by `|m|` and re-merged; the angular
    /// factors only ever see `|m|`.
    pub(crate) fn effective_runs(&self) -> Vec<MuRun> {
        let mut runs = self.runs.clone();
        let last = runs.len() - 1;
        runs[last].value = runs[last].value.abs();
        let mut merged: Vec<MuRun> = Vec::with_capacity(runs.len());
        for r in runs {
            match merged.last_mut() {
                Some(prev) if prev.value == r.value => prev.count += r.count,
                _ => merged.push(r),
            }
        }
        merged
    }

    /// Scale parameter of the radial density in the given space.
    pub fn lambda_in(&self, space: Space) -> f64 {
        match space {
            Space::Position => self.lambda,
            Space::Momentum => 1.0 / self.lambda,
        }
    }

    /// `ln[2 n! / Gamma(n + alpha + 1)]`.
    pub(crate) fn ln_radial_norm(&self) -> f64 {
        let n = f64::from(self.n);
        std::f64::consts::LN_2 + ln_gamma(n + 1.0) - ln_gamma(n + self.alpha() + 1.0)
    }

    /// Radial density with `integral rho(r) r^{D-1} dr = 1`. The momentum
    /// density is the position one with `lambda -> 1/lambda`.
    pub fn radial_density(&self, r: f64, space: Space) -> Result<LogValue> {
        if !(r >= 0.0) || !r.is_finite() {
            return Err(Error::domain(
                "radial_density",
                format!("r = {r} must be non-negative"),
            ));
        }
        let lam = self.lambda_in(space);
        let x = lam * r * r;
        let l = f64::from(self.l());
        let power = if self.l() == 0 { 0.0 } else { l * x.ln() };
        let poly = laguerre(self.n as usize, self.alpha(), x).abs_powf(2.0);
        Ok(poly.scale_log(self.ln_radial_norm() + self.d() / 2.0 * lam.ln() - x + power))
    }

    /// Same state with the dimension changed; the run with the largest
    /// multiplicity (the last one on ties) absorbs the difference.
    pub fn with_dim(&self, dim: usize) -> Result<Self> {
        let idx = self
            .runs
            .iter()
            .enumerate()
            .rev()
            .max_by_key(|(_, r)| r.count)
            .map(|(i, _)| i)
            .unwrap_or(0);
        let others: usize = self
            .runs
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != idx)
            .map(|(_, r)| r.count)
            .sum();
        if dim < 2 || dim - 1 <= others {
            return Err(Error::InvalidState {
                index: 0,
                detail: format!(
                    "chain {} cannot be resized to D = {dim}",
                    self.chain_string()
                ),
            });
        }
        let mut runs = self.runs.clone();
        runs[idx].count = dim - 1 - others;
        HarmonicState::new(dim, self.lambda, self.n, runs)
    }

    pub fn with_lambda(&self, lambda: f64) -> Result<Self> {
        HarmonicState::new(self.dim, lambda, self.n, self.runs.clone())
    }

    fn chain_string(&self) -> String {
        self.runs
            .iter()
            .map(|r| format!("{}^{}", r.value, r.count))
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for HarmonicState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "D={};lambda={};n={};mu={}",
            self.dim,
            self.lambda,
            self.n,
            self.chain_string()
        )
    }
}

impl FromStr for HarmonicState {
    type Err = Error;

    /// Parses `D=..;lambda=..;n=..;mu=v1^m1,v2^m2,...` (whitespace ignored,
    /// `^1` optional, keys in any order).
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let err = |detail: String| Error::Parse {
            input: s.to_string(),
            detail,
        };
        let (mut dim, mut lambda, mut n, mut runs) = (None, None, None, None);
        for field in compact.split(';').filter(|f| !f.is_empty()) {
            let (key, value) = field
                .split_once('=')
                .ok_or_else(|| err(format!("field `{field}` is not key=value")))?;
            match key {
                "D" | "d" => {
                    dim = Some(value.parse::<usize>().map_err(|e| err(format!("D: {e}")))?)
                }
                "lambda" => {
                    lambda = Some(
                        value
                            .parse::<f64>()
                            .map_err(|e| err(format!("lambda: {e}")))?,
                    )
                }
                "n" => n = Some(value.parse::<u32>().map_err(|e| err(format!("n: {e}")))?),
                "mu" => {
                    let mut parsed = Vec::new();
                    for item in value.split(',') {
                        let (v, c) = item.split_once('^').unwrap_or((item, "1"));
                        let v = v
                            .parse::<i64>()
                            .map_err(|e| err(format!("mu value `{v}`: {e}")))?;
                        let c = c
                            .parse::<usize>()
                            .map_err(|e| err(format!("mu multiplicity `{c}`: {e}")))?;
                        parsed.push(MuRun::new(v, c));
                    }
                    runs = Some(parsed);
                }
                other => return Err(err(format!("unknown key `{other}`"))),
            }
        }
        let dim = dim.ok_or_else(|| err("missing D".into()))?;
        let lambda = lambda.ok_or_else(|| err("missing lambda".into()))?;
        let n = n.ok_or_else(|| err("missing n".into()))?;
        let runs = runs.ok_or_else(|| err("missing mu".into()))?;
        HarmonicState::new(dim, lambda, n, runs)
    }
}
