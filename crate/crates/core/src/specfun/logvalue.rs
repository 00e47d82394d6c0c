use std::cmp::Ordering;
use std::fmt;
use std::ops::{Div, Mul};

/// A real number stored as a sign and the natural log of its magnitude.
///
/// Gamma functions and Laguerre normalisations at `alpha ~ D/2` overflow `f64`
/// long before `D` gets interesting, so everything upstream of the final
/// conversion is carried in this form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogValue {
    sign: i8,
    log_mag: f64,
}

impl LogValue {
    pub const ZERO: LogValue = LogValue {
        sign: 0,
        log_mag: f64::NEG_INFINITY,
    };
    pub const ONE: LogValue = LogValue {
        sign: 1,
        log_mag: 0.0,
    };

    /// Builds a value from sign and log-magnitude. A zero sign or a `-inf`
    /// magnitude both collapse to [`LogValue::ZERO`].
    pub fn new(sign: i8, log_mag: f64) -> Self {
        if sign == 0 || log_mag == f64::NEG_INFINITY {
            Self::ZERO
        } else {
            LogValue {
                sign: sign.signum(),
                log_mag,
            }
        }
    }

    /// Positive value with the given log-magnitude.
    pub fn from_log(log_mag: f64) -> Self {
        Self::new(1, log_mag)
    }

    pub fn from_f64(x: f64) -> Self {
        if x == 0.0 {
            Self::ZERO
        } else {
            Self::new(if x > 0.0 { 1 } else { -1 }, x.abs().ln())
        }
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    /// Natural log of the magnitude; `-inf` for zero.
    pub fn log_mag(&self) -> f64 {
        self.log_mag
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    pub fn to_f64(&self) -> f64 {
        match self.sign {
            0 => 0.0,
            s => f64::from(s) * self.log_mag.exp(),
        }
    }

    pub fn abs(&self) -> Self {
        Self::new(self.sign.abs(), self.log_mag)
    }

    /// `|self|^p`. Zero stays zero for positive `p`.
    pub fn abs_powf(&self, p: f64) -> Self {
        if self.is_zero() {
            if p > 0.0 {
                Self::ZERO
            } else {
                Self::from_log(f64::INFINITY)
            }
        } else {
            Self::from_log(p * self.log_mag)
        }
    }

    /// Multiplies by `exp(shift)`.
    pub fn scale_log(&self, shift: f64) -> Self {
        Self::new(self.sign, self.log_mag + shift)
    }

    /// Signed addition through a shifted exponential.
    pub fn add(&self, other: &LogValue) -> LogValue {
        if self.is_zero() {
            return *other;
        }
        if other.is_zero() {
            return *self;
        }
        let (big, small) = if self.log_mag >= other.log_mag {
            (self, other)
        } else {
            (other, self)
        };
        let ratio = (small.log_mag - big.log_mag).exp();
        if big.sign == small.sign {
            LogValue::new(big.sign, big.log_mag + ratio.ln_1p())
        } else if ratio == 1.0 {
            LogValue::ZERO
        } else {
            LogValue::new(big.sign, big.log_mag + (-ratio).ln_1p())
        }
    }

    /// Orders by absolute magnitude.
    pub fn cmp_abs(&self, other: &LogValue) -> Ordering {
        self.log_mag
            .partial_cmp(&other.log_mag)
            .unwrap_or(Ordering::Equal)
    }
}

impl Mul for LogValue {
    type Output = LogValue;

    fn mul(self, rhs: LogValue) -> LogValue {
        LogValue::new(self.sign * rhs.sign, self.log_mag + rhs.log_mag)
    }
}

impl Div for LogValue {
    type Output = LogValue;

    fn div(self, rhs: LogValue) -> LogValue {
        assert!(!rhs.is_zero(), "LogValue division by zero");
        LogValue::new(self.sign * rhs.sign, self.log_mag - rhs.log_mag)
    }
}

impl fmt::Display for LogValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            0 => write!(f, "0"),
            1 => write!(f, "exp({})", self.log_mag),
            _ => write!(f, "-exp({})", self.log_mag),
        }
    }
}

/// Compensated (Neumaier) sum of signed log-values.
///
/// Every term is shifted by the largest log-magnitude before exponentiating,
/// so the result is exact up to the final `ln` for any dynamic range that
/// `f64` can represent after the shift.
pub fn log_sum(values: &[LogValue]) -> LogValue {
    let shift = values
        .iter()
        .filter(|v| !v.is_zero())
        .map(|v| v.log_mag)
        .fold(f64::NEG_INFINITY, f64::max);
    if shift == f64::NEG_INFINITY {
        return LogValue::ZERO;
    }
    let mut sum = 0.0_f64;
    let mut comp = 0.0_f64;
    for v in values.iter().filter(|v| !v.is_zero()) {
        let term = f64::from(v.sign) * (v.log_mag - shift).exp();
        let t = sum + term;
        if sum.abs() >= term.abs() {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
    }
    LogValue::from_f64(sum + comp).scale_log(shift)
}
