//! Exact and large-dimension asymptotic uncertainty measures of the
//! D-dimensional isotropic harmonic oscillator.
//!
//! Exact values come from log-space quadrature of the Laguerre/Gegenbauer
//! functionals that define each quantity; asymptotic values come from the
//! `alpha -> inf` expansion of Rényi-like Laguerre functionals. Both are
//! reported side by side so the asymptotic formulas can be checked.

// `!(x > 0.0)` is used on purpose so NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::fmt;
use std::str::FromStr;

pub mod convergence;
pub mod entropies;
pub mod error;
pub mod laguerre_asym;
pub mod moments;
pub mod specfun;
pub mod states;

pub use convergence::{
    converge_dims, converge_j1, fit_log_log, ConvergencePoint, ConvergenceReport, Quantity,
    SlopeFit,
};
pub use entropies::{
    disequilibrium, renyi_total, shannon, tsallis_from_renyi, uncertainty_sum, EntropyResult,
    EntropySpec, UncertaintyReport,
};
pub use error::{Error, Result};
pub use laguerre_asym::{
    corollary_asym, d1_coefficient, j1_asym, j1_exact, AsymptoticBreakdown, J1Params,
};
pub use moments::{
    characteristic_length, check_bounds, heisenberg_product, radial_moment, MomentQuery,
};
pub use specfun::{LogValue, QuadratureSpec};
pub use states::{HarmonicState, MuFamilies, MuRun, Space};

/// Evaluation path: quadrature or large-D formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Exact,
    Asymptotic,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Asymptotic => "asymptotic",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "exact" => Ok(Mode::Exact),
            "asymptotic" | "asym" => Ok(Mode::Asymptotic),
            other => Err(Error::Parse {
                input: other.to_string(),
                detail: "expected `exact` or `asymptotic`".into(),
            }),
        }
    }
}
