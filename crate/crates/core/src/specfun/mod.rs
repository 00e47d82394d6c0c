//! Log-space special functions, orthogonal polynomials and quadrature.

pub mod gamma;
pub mod logvalue;
pub mod poly;
pub mod quadrature;

pub use gamma::{digamma, log_gamma, log_pochhammer};
pub use logvalue::{log_sum, LogValue};
pub use poly::{gegenbauer_eval, gegenbauer_roots, laguerre_eval, laguerre_roots};
pub use quadrature::{
    integrate_log, integrate_log_detailed, Integral, Interval, PeakHint, QuadratureSpec,
};
