//! Angular Rényi entropies of hyperspherical harmonics.
//!
//! `|Y|^2` factorizes into one Gegenbauer factor per polar angle. Inside a
//! family of equal `mu` the factor is a pure power of `sin` and whole runs of
//! them telescope to a ratio of two gamma functions; only the family
//! transitions need a 1-D quadrature.

use std::f64::consts::PI;

use crate::error::Result;
use crate::laguerre_asym::AsymptoticBreakdown;
use crate::specfun::gamma::{ln_gamma, ln_pochhammer};
use crate::specfun::poly::{gegenbauer, gegenbauer_roots};
use crate::specfun::quadrature::{integrate_log, Interval, PeakHint, QuadratureSpec};
use crate::specfun::LogValue;
use crate::states::HarmonicState;
use crate::Mode;

use super::{check_q, is_shannon_limit, shannon, EntropyResult};

/// One stretch of the polar-angle product.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum Segment {
    /// Angles `j_first..=j_last` with `mu_j = mu_{j+1} = mu`.
    Run {
        mu: f64,
        j_first: usize,
        j_last: usize,
    },
    /// Angle `j` where the chain drops from `mu` to `mu_next`.
    Transition { j: usize, mu: f64, mu_next: f64 },
}

/// `alpha_j = (D - j - 1) / 2`.
pub(crate) fn alpha_j(d: usize, j: usize) -> f64 {
    (d - j - 1) as f64 / 2.0
}

pub(crate) fn segments(state: &HarmonicState) -> Vec<Segment> {
    let runs = state.effective_runs();
    let mut out = Vec::with_capacity(2 * runs.len());
    let mut start = 1usize;
    for (i, r) in runs.iter().enumerate() {
        let end = start + r.count - 1;
        if r.count > 1 {
            out.push(Segment::Run {
                mu: r.value as f64,
                j_first: start,
                j_last: end - 1,
            });
        }
        if let Some(next) = runs.get(i + 1) {
            out.push(Segment::Transition {
                j: end,
                mu: r.value as f64,
                mu_next: next.value as f64,
            });
        }
        start = end + 1;
    }
    out
}

/// `ln N_j^2` for one polar factor.
pub(crate) fn ln_norm_factor(d: usize, j: usize, mu: f64, mu_next: f64) -> f64 {
    let a = alpha_j(d, j);
    let delta = mu - mu_next;
    (a + mu).ln() + ln_gamma(delta + 1.0) + 2.0 * ln_gamma(a + mu_next)
        - PI.ln()
        - (1.0 - 2.0 * a - 2.0 * mu_next) * std::f64::consts::LN_2
        - ln_gamma(2.0 * a + mu + mu_next)
}

/// Sum of `ln N_j^2` over a run (telescoped).
pub(crate) fn ln_norm_run(d: usize, mu: f64, j_first: usize, j_last: usize) -> f64 {
    let cnt = (j_last - j_first + 1) as f64;
    let z_first = alpha_j(d, j_first) + mu;
    let z_last = alpha_j(d, j_last) + mu;
    -cnt / 2.0 * PI.ln() + ln_gamma(z_first + 1.0) - ln_gamma(z_last + 0.5)
}

/// Sum over a run of `ln int sin^{2 q mu + 2 alpha_j}` (telescoped).
pub(crate) fn ln_power_integral_run(
    d: usize,
    mu: f64,
    q: f64,
    j_first: usize,
    j_last: usize,
) -> f64 {
    let cnt = (j_last - j_first + 1) as f64;
    let w_first = alpha_j(d, j_first) + q * mu;
    let w_last = alpha_j(d, j_last) + q * mu;
    cnt / 2.0 * PI.ln() + ln_gamma(w_last + 0.5) - ln_gamma(w_first + 1.0)
}

/// Integrates `f(theta)` over `(0, pi)` for the transition factor at angle `j`,
/// splitting at the Gegenbauer zeros.
pub(crate) fn transition_integral<F>(
    d: usize,
    j: usize,
    mu: f64,
    mu_next: f64,
    sin_power: f64,
    f: F,
    spec: &QuadratureSpec,
) -> Result<LogValue>
where
    F: Fn(f64) -> LogValue,
{
    let beta = alpha_j(d, j) + mu_next;
    let delta = (mu - mu_next) as usize;
    let mut splits: Vec<f64> = gegenbauer_roots(delta, beta)?
        .into_iter()
        .map(f64::acos)
        .collect();
    splits.sort_by(|a, b| a.partial_cmp(b).expect("finite roots"));
    let spec = spec.with_splits(splits);
    integrate_log(
        f,
        Interval::finite(0.0, PI),
        &spec,
        Some(PeakHint {
            location: PI / 2.0,
            width: 1.0 / (sin_power + 1.0).sqrt(),
        }),
    )
    .map_err(|e| e.in_integral(format!("angular factor j={j} (mu {mu} -> {mu_next})")))
}

/// `ln int |C|^{2q} sin^{2 q mu' + 2 alpha_j}` at a transition.
fn ln_transition_power_integral(
    d: usize,
    j: usize,
    mu: f64,
    mu_next: f64,
    q: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let beta = alpha_j(d, j) + mu_next;
    let delta = (mu - mu_next) as usize;
    let s = 2.0 * q * mu_next + 2.0 * alpha_j(d, j);
    let v = transition_integral(
        d,
        j,
        mu,
        mu_next,
        s,
        |th: f64| {
            gegenbauer(delta, beta, th.cos())
                .abs_powf(2.0 * q)
                .scale_log(s * th.sin().ln())
        },
        spec,
    )?;
    Ok(v.log_mag())
}

/// `ln Lambda_q`, the angular entropic moment `int |Y|^{2q} dOmega`.
pub fn angular_entropic_moment(
    state: &HarmonicState,
    q: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    state.validate()?;
    check_q(q)?;
    let d = state.dim;
    let mut acc = (1.0 - q) * (2.0 * PI).ln();
    for seg in segments(state) {
        acc += match seg {
            Segment::Run {
                mu,
                j_first,
                j_last,
            } => {
                q * ln_norm_run(d, mu, j_first, j_last)
                    + ln_power_integral_run(d, mu, q, j_first, j_last)
            }
            Segment::Transition { j, mu, mu_next } => {
                q * ln_norm_factor(d, j, mu, mu_next)
                    + ln_transition_power_integral(d, j, mu, mu_next, q, spec)?
            }
        };
    }
    Ok(acc)
}

/// `ln M~(D, q, {mu})` over family transitions.
pub fn m_tilde(state: &HarmonicState, q: f64) -> LogValue {
    let runs = state.effective_runs();
    let families = runs.len() as f64;
    let l = f64::from(state.l());
    let m = state.m().unsigned_abs() as f64;
    let mut acc = q * (l - m) * 4f64.ln() + (1.0 - families) / 2.0 * PI.ln();
    for w in runs.windows(2) {
        let delta = (w[0].value - w[1].value) as f64;
        acc += ln_gamma(q * delta + 0.5) - q * ln_gamma(delta + 1.0);
    }
    LogValue::from_log(acc)
}

/// `E~(D, {mu})` together with the growth exponent `l - |m|` claimed for it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ETilde {
    pub value: LogValue,
    pub predicted_exponent: f64,
}

pub fn e_tilde(state: &HarmonicState) -> ETilde {
    let d = state.dim;
    let mut acc = 0.0;
    for seg in segments(state) {
        if let Segment::Transition { j, mu, mu_next } = seg {
            let a = alpha_j(d, j);
            let delta = mu - mu_next;
            acc += 2.0 * delta * (a + mu_next).ln()
                - ln_pochhammer(2.0 * a + 2.0 * mu_next, delta)
                - ln_pochhammer(a + mu_next, delta);
        }
    }
    ETilde {
        value: LogValue::from_log(acc),
        predicted_exponent: f64::from(state.l()) - state.m().unsigned_abs() as f64,
    }
}

pub(crate) fn angular_asymptotic(state: &HarmonicState, q: f64) -> AsymptoticBreakdown {
    let d = state.d();
    let ln_d = d.ln();
    let e = e_tilde(state).value.log_mag();
    let m = m_tilde(state, q).log_mag();
    AsymptoticBreakdown::from_terms([
        ("D log D", -0.5 * d * ln_d),
        ("linear", 0.5 * d * (2.0 * std::f64::consts::E * PI).ln()),
        ("log D", 0.5 * ln_d),
        ("constant", (q * e + m) / (1.0 - q)),
    ])
}

pub fn renyi_angular(
    state: &HarmonicState,
    q: f64,
    mode: Mode,
    spec: &QuadratureSpec,
) -> Result<EntropyResult> {
    state.validate()?;
    check_q(q)?;
    if is_shannon_limit(q) {
        let s = shannon::shannon(state, crate::Space::Position, mode, spec)?;
        return Ok(EntropyResult::angular(s.angular_part, None).with_flags(&s));
    }
    match mode {
        Mode::Exact => Ok(EntropyResult::angular(
            angular_entropic_moment(state, q, spec)? / (1.0 - q),
            None,
        )),
        Mode::Asymptotic => {
            let b = angular_asymptotic(state, q);
            Ok(EntropyResult::angular(b.total_log, Some(b)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::MuRun;

    fn spec() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    fn ln_sphere(d: usize) -> f64 {
        let h = d as f64 / 2.0;
        std::f64::consts::LN_2 + h * PI.ln() - ln_gamma(h)
    }

    #[test]
    fn segments_cover_every_angle() {
        let s = HarmonicState::new(
            8,
            1.0,
            0,
            vec![MuRun::new(3, 2), MuRun::new(1, 4), MuRun::new(-1, 1)],
        )
        .unwrap();
        let segs = segments(&s);
        // effective chain 3,3,1,1,1,1,1 -> one transition at j = 2
        assert_eq!(
            segs,
            vec![
                Segment::Run {
                    mu: 3.0,
                    j_first: 1,
                    j_last: 1
                },
                Segment::Transition {
                    j: 2,
                    mu: 3.0,
                    mu_next: 1.0
                },
                Segment::Run {
                    mu: 1.0,
                    j_first: 3,
                    j_last: 6
                },
            ]
        );
    }

    #[test]
    fn run_sums_match_direct_products() {
        let (d, mu, q) = (23usize, 2.0, 1.7);
        let (jf, jl) = (3usize, 15usize);
        let direct_norm: f64 = (jf..=jl).map(|j| ln_norm_factor(d, j, mu, mu)).sum();
        assert!((ln_norm_run(d, mu, jf, jl) - direct_norm).abs() < 1e-12);
        let direct_int: f64 = (jf..=jl)
            .map(|j| {
                let s = 2.0 * q * mu + 2.0 * alpha_j(d, j);
                0.5 * PI.ln() + ln_gamma((s + 1.0) / 2.0) - ln_gamma(s / 2.0 + 1.0)
            })
            .sum();
        assert!((ln_power_integral_run(d, mu, q, jf, jl) - direct_int).abs() < 1e-12);
    }

    #[test]
    fn ns_angular_is_log_sphere_area() {
        for &q in &[0.25, 0.5, 2.0, 7.0] {
            for &d in &[2usize, 3, 10, 50, 1000] {
                let s = HarmonicState::ns(d, 1.0, 1).unwrap();
                let r = renyi_angular(&s, q, Mode::Exact, &spec()).unwrap().value;
                assert!(
                    (r - ln_sphere(d)).abs() < 1e-10 * ln_sphere(d).abs().max(1.0),
                    "q={q} D={d}"
                );
            }
        }
    }

    #[test]
    fn circular_matches_pochhammer_form() {
        // (1-q)^{-1} ln[(2 pi^{D/2})^{1-q} ((n)_{D/2-1})^q / (1+q(n-1))_{D/2-1}]
        for &(d, n, q) in &[(5usize, 2u32, 2.0), (9, 3, 0.5), (40, 4, 3.0)] {
            let s = HarmonicState::circular(d, 1.0, n).unwrap();
            let r = renyi_angular(&s, q, Mode::Exact, &spec()).unwrap().value;
            let h = d as f64 / 2.0 - 1.0;
            let nn = f64::from(n);
            let inner = (1.0 - q) * (std::f64::consts::LN_2 + d as f64 / 2.0 * PI.ln())
                + q * ln_pochhammer(nn, h)
                - ln_pochhammer(1.0 + q * (nn - 1.0), h);
            assert!((r - inner / (1.0 - q)).abs() < 1e-8, "D={d} n={n}");
        }
    }

    /// Integrates `|Y|^{2q}` factor by factor without any telescoping.
    fn brute_force_ln_lambda(s: &HarmonicState, q: f64) -> f64 {
        let chain: Vec<f64> = s.chain().iter().map(|v| v.abs() as f64).collect();
        let d = s.dim;
        let mut acc = (1.0 - q) * (2.0 * PI).ln();
        for j in 1..=d - 2 {
            let (mu, nu) = (chain[j - 1], chain[j]);
            let beta = alpha_j(d, j) + nu;
            let delta = (mu - nu) as usize;
            let sp = 2.0 * q * nu + 2.0 * alpha_j(d, j);
            let v = integrate_log(
                |th: f64| {
                    gegenbauer(delta, beta, th.cos())
                        .abs_powf(2.0 * q)
                        .scale_log(sp * th.sin().ln())
                },
                Interval::finite(0.0, PI),
                &QuadratureSpec::with_tol(1e-12),
                None,
            )
            .unwrap();
            acc += q * ln_norm_factor(d, j, mu, nu) + v.log_mag();
        }
        acc
    }

    #[test]
    fn mixed_chain_matches_brute_force() {
        let s = HarmonicState::new(
            9,
            1.0,
            0,
            vec![MuRun::new(3, 2), MuRun::new(1, 3), MuRun::new(0, 3)],
        )
        .unwrap();
        for &q in &[0.5, 2.0] {
            let fast = angular_entropic_moment(&s, q, &spec()).unwrap();
            assert!((fast - brute_force_ln_lambda(&s, q)).abs() < 1e-9);
        }
    }

    #[test]
    fn equal_chains_have_unit_corrections() {
        for s in [
            HarmonicState::circular(30, 1.0, 4).unwrap(),
            HarmonicState::ns(30, 1.0, 2).unwrap(),
        ] {
            assert_eq!(m_tilde(&s, 2.0).log_mag(), 0.0);
            assert_eq!(e_tilde(&s).value.log_mag(), 0.0);
        }
    }

    #[test]
    fn m_tilde_matches_angle_by_angle_product() {
        for d in [5usize, 12, 30] {
            let s = HarmonicState::new(d, 1.0, 0, vec![MuRun::new(2, 1), MuRun::new(0, d - 2)])
                .unwrap();
            let q = 1.6;
            let chain: Vec<f64> = s.chain().iter().map(|&v| v as f64).collect();
            let mut direct = q * 2.0 * 4f64.ln() + (1.0 - d as f64 / 2.0) * PI.ln();
            for j in 1..=d - 2 {
                let delta = chain[j - 1] - chain[j];
                direct += ln_gamma(q * delta + 0.5) - q * ln_gamma(delta + 1.0);
            }
            assert!((m_tilde(&s, q).log_mag() - direct).abs() < 1e-12, "D={d}");
        }
    }

    #[test]
    fn asymptotic_ns_terms() {
        let d = 400usize;
        let s = HarmonicState::ns(d, 1.0, 0).unwrap();
        let b = angular_asymptotic(&s, 2.0);
        // ln(2 pi^{D/2} / Gamma(D/2)) differs from the expansion by O(1)
        assert!((b.total_log - ln_sphere(d)).abs() < 2.0);
        assert_eq!(b.term("constant"), Some(0.0));
    }
}
