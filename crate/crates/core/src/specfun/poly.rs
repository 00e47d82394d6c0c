//! Laguerre and Gegenbauer polynomials by scaled three-term recurrence, and
//! their zeros by interlacing brackets refined with safeguarded Newton.

use super::logvalue::LogValue;
use crate::error::{Error, Result};

/// Rescale the recurrence pair whenever it leaves this band.
const RESCALE_HI: f64 = 1e150;
const RESCALE_LO: f64 = 1e-150;

const ROOT_REL_TOL: f64 = 1e-12;
const ROOT_MAX_ITER: usize = 400;

/// Generalised Laguerre polynomial `L_n^(alpha)(x)`.
pub fn laguerre_eval(n: usize, alpha: f64, x: f64) -> Result<LogValue> {
    if !(alpha > -1.0) || !(x >= 0.0) || !x.is_finite() || !alpha.is_finite() {
        return Err(Error::domain(
            "laguerre_eval",
            format!("need alpha > -1 and finite x >= 0, got alpha = {alpha}, x = {x}"),
        ));
    }
    Ok(laguerre(n, alpha, x))
}

/// Gegenbauer polynomial `C_m^(alpha)(t)`.
pub fn gegenbauer_eval(m: usize, alpha: f64, t: f64) -> Result<LogValue> {
    if !(alpha > -0.5) || !(-1.0..=1.0).contains(&t) || !alpha.is_finite() {
        return Err(Error::domain(
            "gegenbauer_eval",
            format!("need alpha > -1/2 and t in [-1, 1], got alpha = {alpha}, t = {t}"),
        ));
    }
    Ok(gegenbauer(m, alpha, t))
}

/// The `n` zeros of `L_n^(alpha)`, ascending.
pub fn laguerre_roots(n: usize, alpha: f64) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::domain("laguerre_roots", "degree must be at least 1"));
    }
    if !(alpha > -1.0) || !alpha.is_finite() {
        return Err(Error::domain(
            "laguerre_roots",
            format!("need alpha > -1, got {alpha}"),
        ));
    }
    let mut roots = vec![alpha + 1.0];
    for k in 2..=n {
        // all zeros are positive and sum to k(k + alpha)
        let upper = k as f64 * (k as f64 + alpha) + 1.0;
        let mut edges = Vec::with_capacity(k + 1);
        edges.push(0.0);
        edges.extend_from_slice(&roots);
        edges.push(upper);
        let f = |x: f64| laguerre(k, alpha, x);
        let df = |x: f64| laguerre(k - 1, alpha + 1.0, x) * LogValue::from_f64(-1.0);
        roots = edges
            .windows(2)
            .map(|w| refine_root(&f, &df, w[0], w[1]))
            .collect();
    }
    Ok(roots)
}

/// The `m` zeros of `C_m^(alpha)` in (-1, 1), ascending.
pub fn gegenbauer_roots(m: usize, alpha: f64) -> Result<Vec<f64>> {
    if m == 0 {
        return Err(Error::domain(
            "gegenbauer_roots",
            "degree must be at least 1",
        ));
    }
    if !(alpha > -0.5) || alpha == 0.0 || !alpha.is_finite() {
        return Err(Error::domain(
            "gegenbauer_roots",
            format!("need alpha > -1/2, alpha != 0, got {alpha}"),
        ));
    }
    let mut roots = vec![0.0];
    for k in 2..=m {
        let mut edges = Vec::with_capacity(k + 1);
        edges.push(-1.0);
        edges.extend_from_slice(&roots);
        edges.push(1.0);
        let f = |t: f64| gegenbauer(k, alpha, t);
        // d/dt C_k^(a) = 2a C_{k-1}^(a+1)
        let df = |t: f64| gegenbauer(k - 1, alpha + 1.0, t) * LogValue::from_f64(2.0 * alpha);
        roots = edges
            .windows(2)
            .map(|w| refine_root(&f, &df, w[0], w[1]))
            .collect();
    }
    Ok(roots)
}

pub(crate) fn laguerre(n: usize, alpha: f64, x: f64) -> LogValue {
    if n == 0 {
        return LogValue::ONE;
    }
    let mut prev = 1.0_f64;
    let mut cur = alpha + 1.0 - x;
    let mut log_scale = 0.0;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - x) * cur - (kf + alpha) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
        rescale(&mut prev, &mut cur, &mut log_scale);
    }
    LogValue::from_f64(cur).scale_log(log_scale)
}

pub(crate) fn gegenbauer(m: usize, alpha: f64, t: f64) -> LogValue {
    if m == 0 {
        return LogValue::ONE;
    }
    let mut prev = 1.0_f64;
    let mut cur = 2.0 * alpha * t;
    let mut log_scale = 0.0;
    for k in 1..m {
        let kf = k as f64;
        let next = (2.0 * (kf + alpha) * t * cur - (kf + 2.0 * alpha - 1.0) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
        rescale(&mut prev, &mut cur, &mut log_scale);
    }
    LogValue::from_f64(cur).scale_log(log_scale)
}

fn rescale(prev: &mut f64, cur: &mut f64, log_scale: &mut f64) {
    let m = prev.abs().max(cur.abs());
    if m > RESCALE_HI || (m < RESCALE_LO && m > 0.0) {
        *prev /= m;
        *cur /= m;
        *log_scale += m.ln();
    }
}

/// Single sign-changing zero of `f` in `[lo, hi]`: Newton steps taken in
/// log-ratio form, falling back to bisection whenever a step leaves the
/// current bracket.
fn refine_root<F, G>(f: &F, df: &G, lo: f64, hi: f64) -> f64
where
    F: Fn(f64) -> LogValue,
    G: Fn(f64) -> LogValue,
{
    let (mut lo, mut hi) = (lo, hi);
    // absolute floor so zeros sitting at the origin still terminate
    let floor = (hi - lo) * 1e-10;
    let sign_lo = f(lo).sign();
    if sign_lo == 0 {
        return lo;
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..ROOT_MAX_ITER {
        let fx = f(x);
        if fx.is_zero() {
            return x;
        }
        if fx.sign() == sign_lo {
            lo = x;
        } else {
            hi = x;
        }
        let dfx = df(x);
        let newton = if dfx.is_zero() {
            f64::NAN
        } else {
            x - (fx / dfx).to_f64()
        };
        let next = if newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        let step = (next - x).abs();
        x = next;
        let scale = x.abs().max(floor);
        if step <= ROOT_REL_TOL * 1e-2 * scale || hi - lo <= ROOT_REL_TOL * scale {
            break;
        }
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Explicit sum `L_n^a(x) = sum_i (-1)^i C(n+a, n-i) x^i / i!`, plus the
    /// sum of absolute terms for a relative scale.
    fn laguerre_monomial(n: usize, a: f64, x: f64) -> (f64, f64) {
        let mut sum = 0.0;
        let mut scale = 0.0;
        for i in 0..=n {
            // C(n + a, n - i) = prod_{j=1}^{n-i} (a + i + j) / j
            let mut binom = 1.0;
            for j in 1..=(n - i) {
                binom *= (a + i as f64 + j as f64) / j as f64;
            }
            let fact: f64 = (1..=i).map(|k| k as f64).product();
            let term = binom * x.powi(i as i32) / fact;
            sum += if i % 2 == 0 { term } else { -term };
            scale += term.abs();
        }
        (sum, scale)
    }

    /// `C_m^a(t) = sum_k (-1)^k (a)_{m-k} (2t)^{m-2k} / (k! (m-2k)!)`.
    fn gegenbauer_monomial(m: usize, a: f64, t: f64) -> (f64, f64) {
        let mut sum = 0.0;
        let mut scale = 0.0;
        for k in 0..=(m / 2) {
            let rising: f64 = (0..(m - k)).map(|j| a + j as f64).product();
            let fk: f64 = (1..=k).map(|j| j as f64).product();
            let fr: f64 = (1..=(m - 2 * k)).map(|j| j as f64).product();
            let term = rising * (2.0 * t).powi((m - 2 * k) as i32) / (fk * fr);
            sum += if k % 2 == 0 { term } else { -term };
            scale += term.abs();
        }
        (sum, scale)
    }

    #[test]
    fn laguerre_low_degrees() {
        assert_eq!(laguerre_eval(0, 7.3, 2.0).unwrap(), LogValue::ONE);
        let v = laguerre_eval(1, 2.5, 1.0).unwrap().to_f64();
        assert!((v - 2.5).abs() < 1e-15);
        let v = laguerre_eval(2, 0.0, 1.0).unwrap().to_f64();
        assert!((v + 0.5).abs() < 1e-15);
    }

    #[test]
    fn gegenbauer_low_degrees() {
        assert_eq!(gegenbauer_eval(0, 3.0, 0.2).unwrap(), LogValue::ONE);
        let v = gegenbauer_eval(1, 1.5, 0.4).unwrap().to_f64();
        assert!((v - 1.2).abs() < 1e-15);
        assert!(gegenbauer_eval(2, 1.0, 0.5).unwrap().to_f64().abs() < 1e-15);
    }

    #[test]
    fn laguerre_huge_parameter_does_not_overflow() {
        // leading behaviour (alpha)_n / n! at x = 0
        let v = laguerre_eval(40, 1e7, 0.0).unwrap();
        let expect: f64 = (1..=40).map(|j| ((1e7 + j as f64) / j as f64).ln()).sum();
        assert_eq!(v.sign(), 1);
        assert!((v.log_mag() - expect).abs() < 1e-10 * expect);
    }

    #[test]
    fn domain_errors() {
        assert!(laguerre_eval(2, -1.0, 1.0).is_err());
        assert!(laguerre_eval(2, 0.0, -1.0).is_err());
        assert!(gegenbauer_eval(2, -0.5, 0.0).is_err());
        assert!(gegenbauer_eval(2, 1.0, 1.5).is_err());
        assert!(laguerre_roots(0, 1.0).is_err());
    }

    #[test]
    fn laguerre_roots_examples() {
        assert_eq!(laguerre_roots(1, 4.5).unwrap(), vec![5.5]);
        let r = laguerre_roots(2, 0.0).unwrap();
        let s2 = 2f64.sqrt();
        assert!((r[0] - (2.0 - s2)).abs() < 1e-12 * r[0]);
        assert!((r[1] - (2.0 + s2)).abs() < 1e-12 * r[1]);
        let r = laguerre_roots(3, 2.0).unwrap();
        assert_eq!(r.len(), 3);
        for &x in &r {
            let (v, scale) = laguerre_monomial(3, 2.0, x);
            assert!(v.abs() < 1e-10 * scale, "L_3^2({x}) = {v}");
        }
        assert!(r.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn laguerre_roots_extreme_parameter() {
        let alpha = 5e5;
        let r = laguerre_roots(4, alpha).unwrap();
        let sum: f64 = r.iter().sum();
        assert!((sum - 4.0 * (4.0 + alpha)).abs() < 1e-9 * sum);
        for w in r.windows(2) {
            assert!(w[1] > w[0]);
        }
    }

    #[test]
    fn gegenbauer_roots_are_zeros() {
        for &(m, a) in &[(1usize, 0.7), (2, 1.0), (3, 2.5), (5, 40.0), (4, 3e5)] {
            let r = gegenbauer_roots(m, a).unwrap();
            assert_eq!(r.len(), m);
            for &t in &r {
                let v = gegenbauer(m, a, t);
                let d = gegenbauer(m - 1, a + 1.0, t).abs_powf(1.0).log_mag() + (2.0 * a).ln();
                // |f| tiny relative to |f'| times the local spacing
                assert!(
                    v.is_zero() || v.log_mag() - d < (1e-10_f64).ln(),
                    "m={m} a={a} t={t}"
                );
            }
            // symmetric about zero
            for (x, y) in r.iter().zip(r.iter().rev()) {
                assert!((x + y).abs() < 1e-12);
            }
        }
        let r = gegenbauer_roots(2, 1.0).unwrap();
        assert!((r[1] - 0.5).abs() < 1e-14);
    }

    proptest! {
        #[test]
        fn laguerre_matches_monomial_expansion(n in 0usize..=6, a in -0.9f64..20.0, x in 0.0f64..40.0) {
            let (expect, scale) = laguerre_monomial(n, a, x);
            let got = laguerre(n, a, x).to_f64();
            prop_assert!((got - expect).abs() <= 1e-10 * scale.max(1e-300));
        }

        #[test]
        fn gegenbauer_matches_monomial_expansion(m in 0usize..=6, a in -0.45f64..20.0, t in -1.0f64..=1.0) {
            let (expect, scale) = gegenbauer_monomial(m, a, t);
            let got = gegenbauer(m, a, t).to_f64();
            prop_assert!((got - expect).abs() <= 1e-10 * scale.max(1e-300));
        }
    }
}
