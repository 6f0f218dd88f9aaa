//! Sign + natural-log-of-magnitude representation for reals far outside
//! the double range. exp(pi sqrt(2n/3)) already overflows f64 near
//! n = 6e4; the log never comes close.

use std::cmp::Ordering;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// A real number stored as its sign and the natural log of its magnitude.
///
/// Multiplication adds log-magnitudes, addition is a signed log-sum-exp.
/// Zero is a distinguished state (`log_abs` is meaningless there).
#[derive(Clone, Copy, Debug)]
pub struct LogValue {
    sign: i8,
    log_abs: f64,
}

impl LogValue {
    pub const ZERO: LogValue = LogValue { sign: 0, log_abs: f64::NEG_INFINITY };

    /// Build from a sign in {-1, 0, +1} and a log-magnitude.
    pub fn new(sign: i8, log_abs: f64) -> Self {
        if sign == 0 || log_abs == f64::NEG_INFINITY {
            Self::ZERO
        } else {
            LogValue { sign: sign.signum(), log_abs }
        }
    }

    /// A positive value given as ln(x).
    pub fn from_ln(log_abs: f64) -> Self {
        Self::new(1, log_abs)
    }

    pub fn from_f64(x: f64) -> Self {
        if x == 0.0 {
            Self::ZERO
        } else {
            LogValue { sign: if x > 0.0 { 1 } else { -1 }, log_abs: x.abs().ln() }
        }
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    /// ln of the magnitude. Negative infinity for zero.
    pub fn log_abs(&self) -> f64 {
        self.log_abs
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    /// Convert back to f64; overflows to +/-inf when the magnitude exceeds
    /// the double range.
    pub fn to_f64(&self) -> f64 {
        self.sign as f64 * self.log_abs.exp()
    }

    pub fn abs(&self) -> Self {
        Self::new(self.sign.abs(), self.log_abs)
    }

    /// Decimal scientific rendering, e.g. `-3.141593e+17`, with `sig`
    /// significant digits. Exact for the stored log up to f64 rounding.
    pub fn to_scientific(&self, sig: usize) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let log10 = self.log_abs * std::f64::consts::LOG10_E;
        let mut exp10 = log10.floor();
        let mut mantissa = 10f64.powf(log10 - exp10);
        // Rounding can push the mantissa to 10.0; renormalize.
        let scale = 10f64.powi(sig as i32 - 1);
        if (mantissa * scale).round() >= 10.0 * scale {
            mantissa /= 10.0;
            exp10 += 1.0;
        }
        let sign = if self.sign < 0 { "-" } else { "" };
        format!("{sign}{mantissa:.*}e{exp10:+03}", sig - 1, exp10 = exp10 as i64)
    }
}

impl Mul for LogValue {
    type Output = LogValue;
    fn mul(self, rhs: LogValue) -> LogValue {
        Self::new(self.sign * rhs.sign, self.log_abs + rhs.log_abs)
    }
}

impl Mul<f64> for LogValue {
    type Output = LogValue;
    fn mul(self, rhs: f64) -> LogValue {
        self * LogValue::from_f64(rhs)
    }
}

impl Div for LogValue {
    type Output = LogValue;
    fn div(self, rhs: LogValue) -> LogValue {
        assert!(!rhs.is_zero(), "division of LogValue by zero");
        Self::new(self.sign * rhs.sign, self.log_abs - rhs.log_abs)
    }
}

impl Neg for LogValue {
    type Output = LogValue;
    fn neg(self) -> LogValue {
        Self::new(-self.sign, self.log_abs)
    }
}

impl Add for LogValue {
    type Output = LogValue;
    fn add(self, rhs: LogValue) -> LogValue {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        let (big, small) = if self.log_abs >= rhs.log_abs { (self, rhs) } else { (rhs, self) };
        let d = small.log_abs - big.log_abs; // <= 0
        if big.sign == small.sign {
            Self::new(big.sign, big.log_abs + d.exp().ln_1p())
        } else if d == 0.0 {
            Self::ZERO
        } else {
            Self::new(big.sign, big.log_abs + (-d.exp()).ln_1p())
        }
    }
}

impl Sub for LogValue {
    type Output = LogValue;
    fn sub(self, rhs: LogValue) -> LogValue {
        self + (-rhs)
    }
}

impl PartialEq for LogValue {
    fn eq(&self, other: &Self) -> bool {
        self.sign == other.sign && (self.sign == 0 || self.log_abs == other.log_abs)
    }
}

impl PartialOrd for LogValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.sign.cmp(&other.sign) {
            Ordering::Equal => {}
            ord => return Some(ord),
        }
        match self.sign {
            0 => Some(Ordering::Equal),
            1 => self.log_abs.partial_cmp(&other.log_abs),
            _ => other.log_abs.partial_cmp(&self.log_abs),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
    }

    #[test]
    fn roundtrip_and_products() {
        let a = LogValue::from_f64(-12.5);
        let b = LogValue::from_f64(3.0);
        assert!(close((a * b).to_f64(), -37.5, 1e-14));
        assert!(close((a / b).to_f64(), -12.5 / 3.0, 1e-14));
        assert_eq!((a * LogValue::ZERO).sign(), 0);
    }

    #[test]
    fn signed_addition() {
        let a = LogValue::from_f64(10.0);
        let b = LogValue::from_f64(-3.0);
        assert!(close((a + b).to_f64(), 7.0, 1e-14));
        assert!(close((b + a).to_f64(), 7.0, 1e-14));
        assert!(close((a - b).to_f64(), 13.0, 1e-14));
        assert!((a - a).is_zero());
        // Magnitudes far beyond the double range still combine.
        let huge = LogValue::from_ln(900.0);
        let huger = LogValue::from_ln(901.0);
        let diff = huger - huge;
        assert_eq!(diff.sign(), 1);
        assert!(close(diff.log_abs(), 900.0 + (std::f64::consts::E - 1.0).ln(), 1e-12));
    }

    #[test]
    fn ordering_across_signs() {
        let neg_big = LogValue::from_f64(-100.0);
        let neg_small = LogValue::from_f64(-0.1);
        let pos = LogValue::from_f64(0.5);
        assert!(neg_big < neg_small);
        assert!(neg_small < LogValue::ZERO);
        assert!(LogValue::ZERO < pos);
        assert!(neg_big < pos);
    }

    #[test]
    fn scientific_rendering() {
        assert_eq!(LogValue::from_f64(1234.5).to_scientific(5), "1.2345e+03");
        assert_eq!(LogValue::from_f64(-0.00271828).to_scientific(3), "-2.72e-03");
        assert_eq!(LogValue::ZERO.to_scientific(6), "0");
        // ln = 2302.585... is ~10^1000; the mantissa survives the overflow range.
        let v = LogValue::from_ln(1000.0 * std::f64::consts::LN_10);
        assert_eq!(v.to_scientific(3), "1.00e+1000");
    }
}
