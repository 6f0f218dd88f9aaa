//! Euler-Maclaurin machinery for sums of f((m + a) t), f(t) = 1/(e^t - 1).
//!
//! The shifted sums expand as
//!
//!   sum_{m>=0} g((m+a) t) ~ (1/t) int_0^inf g  -  sum_n b_n B_{n+1}(a)/(n+1) t^n
//!
//! for smooth g of rapid decay with Taylor coefficients b_n at 0. f itself
//! has a 1/t pole, so the expansion applies to f*(t) = f(t) - e^{-t}/t; for
//! the full sum that yields
//!
//!   sum_{m>=0} f((m+a) t) = -(log t + psi(a))/t + O(log t)   (t -> 0).
//!
//! [`em_residual`] measures that remainder. The order checks on the f*
//! expansion need residuals of size t^M below anything f64 can resolve
//! against a 1/t-sized sum, so [`fstar_zagier_residual`] and
//! [`log_series_residual`] run in double-double precision internally.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use crate::dd::{self, Dd};
use crate::error::{Error, Result};
use crate::specfun::{bernoulli_numbers, bernoulli_poly, digamma_rational, EULER_GAMMA};

/// Sum terms until (m + a) t exceeds this; e^{-x} underflows doubles just
/// past 745, so the dropped tail is below 1e-300.
pub const EM_ARGUMENT_CUTOFF: f64 = 745.0;

/// f(t) = 1/(e^t - 1) for t > 0, via expm1 so small t loses nothing.
pub fn f_eval(t: f64) -> Result<f64> {
    if t <= 0.0 {
        return Err(Error::NonPositive { name: "t", value: t });
    }
    Ok(1.0 / t.exp_m1())
}

fn fstar_taylor_f64() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| (0..10).map(|k| bseq(k).to_f64().expect("small coefficient")).collect())
}

/// f*(t) = f(t) - e^{-t}/t, the pole-free part of f. Below t = 1e-3 the
/// two terms agree to ~3 digits, so the exact Taylor polynomial takes over.
pub fn fstar_eval(t: f64) -> Result<f64> {
    if t <= 0.0 {
        return Err(Error::NonPositive { name: "t", value: t });
    }
    if t < 1e-3 {
        let coeffs = fstar_taylor_f64();
        let mut acc = 0.0;
        for c in coeffs.iter().rev() {
            acc = acc * t + c;
        }
        Ok(acc)
    } else {
        Ok(1.0 / t.exp_m1() - (-t).exp() / t)
    }
}

/// Taylor coefficient b_k of f* at 0, exact:
///
///   b_k = (B_{k+1} - (-1)^{k+1}) / (k+1)!
///
/// The B_{k+1}/(k+1)! part is the t^k coefficient of f; the alternating
/// (-1)^{k+1}/(k+1)! comes from subtracting e^{-t}/t. So b_0 = 1/2,
/// b_1 = -5/12, b_2 = 1/6.
pub fn bseq(k: usize) -> BigRational {
    let bern = bernoulli_numbers(k + 1);
    let sign = if (k + 1) % 2 == 0 { BigRational::one() } else { -BigRational::one() };
    let mut fact = BigRational::one();
    for i in 2..=(k + 1) {
        fact *= BigRational::from_integer(BigInt::from(i));
    }
    (&bern[k + 1] - sign) / fact
}

/// Data for a truncated Euler-Maclaurin expansion: the integral of the
/// summand over (0, inf), its Taylor coefficients at 0, and the shift a.
#[derive(Clone, Debug)]
pub struct ExpansionSpec {
    pub integral_value: f64,
    pub b_coeffs: Vec<BigRational>,
    pub shift: BigRational,
}

impl ExpansionSpec {
    /// The spec for f*: integral gamma (Euler-Mascheroni), coefficients
    /// from [`bseq`].
    pub fn fstar(shift: BigRational, coeff_count: usize) -> Self {
        ExpansionSpec {
            integral_value: EULER_GAMMA,
            b_coeffs: (0..coeff_count).map(bseq).collect(),
            shift,
        }
    }
}

/// sum_{m>=0} f((m + a) t) for 0 < t <= 1, a > 0. Kahan-compensated; the
/// raw running error of ~1e8 positive terms would otherwise swamp the
/// remainder this sum is used to measure.
pub fn em_lhs_sum(a: &BigRational, t: f64) -> Result<f64> {
    if !(t > 0.0 && t <= 1.0) {
        return Err(Error::OutOfRange { name: "t", value: t, interval: "(0, 1]" });
    }
    if !a.is_positive() {
        return Err(Error::NonPositive { name: "a", value: a.to_f64().unwrap_or(f64::NAN) });
    }
    let af = a.to_f64().expect("shift in double range");
    let mut sum = 0.0;
    let mut comp = 0.0;
    let mut m = 0.0f64;
    loop {
        let x = (m + af) * t;
        if x > EM_ARGUMENT_CUTOFF {
            break;
        }
        let y = 1.0 / x.exp_m1() - comp;
        let next = sum + y;
        comp = (next - sum) - y;
        sum = next;
        m += 1.0;
    }
    Ok(sum)
}

/// The truncated expansion
///
///   I/t - sum_{n=0}^{M-1} b_n B_{n+1}(a)/(n+1) t^n.
///
/// Each coefficient b_n B_{n+1}(a)/(n+1) is formed exactly before the
/// single rounding to f64.
pub fn zagier_expansion(spec: &ExpansionSpec, t: f64, m: usize) -> Result<f64> {
    if t <= 0.0 {
        return Err(Error::NonPositive { name: "t", value: t });
    }
    if m > spec.b_coeffs.len() {
        return Err(Error::InsufficientCoefficients { needed: m, available: spec.b_coeffs.len() });
    }
    let mut acc = spec.integral_value / t;
    let mut t_pow = 1.0;
    for (n, b) in spec.b_coeffs.iter().take(m).enumerate() {
        let coeff = b * bernoulli_poly(n + 1, &spec.shift)
            / BigRational::from_integer(BigInt::from(n + 1));
        acc -= coeff.to_f64().expect("coefficient in double range") * t_pow;
        t_pow *= t;
    }
    Ok(acc)
}

/// Remainder of the shifted sum against its two leading terms:
///
///   R(t) = t S(t) + log t + psi(a),   S(t) = sum f((m+a) t),
///
/// which the expansion bounds by O(t log t). Needs a = r/N in (0, 1] and
/// 0 < t <= 1/4.
pub fn em_residual(a: &BigRational, t: f64) -> Result<f64> {
    if !(t > 0.0 && t <= 0.25) {
        return Err(Error::OutOfRange { name: "t", value: t, interval: "(0, 1/4]" });
    }
    let (p, q) = rational_as_ratio(a)?;
    let psi = digamma_rational(p, q)?;
    Ok(t * em_lhs_sum(a, t)? + t.ln() + psi)
}

fn rational_as_ratio(a: &BigRational) -> Result<(u64, u64)> {
    let p = a.numer().to_u64();
    let q = a.denom().to_u64();
    match (p, q) {
        (Some(p), Some(q)) if p >= 1 => Ok((p, q)),
        _ => Err(Error::NonPositive { name: "a", value: a.to_f64().unwrap_or(f64::NAN) }),
    }
}

// ---------------------------------------------------------------------------
// Double-double residual pipeline.
//
// The order-M residual of the f* expansion is ~t^M while the sum is ~1/t;
// at t = 2^-16 and M = 3 that is 1e-19 against 4e4, far below f64. The
// f* terms are evaluated and summed in ~31-digit arithmetic and only the
// final residual is rounded.
// ---------------------------------------------------------------------------

/// Terms with (m+a) t above this are dropped in the dd sums; e^{-120}
/// is 1e-53, configurable headroom below every residual measured here.
const DD_ARGUMENT_CUTOFF: f64 = 120.0;

fn fstar_taylor_dd() -> &'static [Dd] {
    static TABLE: OnceLock<Vec<Dd>> = OnceLock::new();
    TABLE.get_or_init(|| (0..14).map(|k| Dd::from_rational(&bseq(k))).collect())
}

fn fstar_dd(x: Dd) -> Dd {
    if x.hi < 1e-3 {
        let mut acc = Dd::ZERO;
        for c in fstar_taylor_dd().iter().rev() {
            acc = acc.mul(x).add(*c);
        }
        acc
    } else {
        let em1 = x.expm1();
        let exp_neg = em1.add_f64(1.0).recip();
        em1.recip().sub(exp_neg.div(x))
    }
}

/// sum_{m} f*((m+a) t) minus its order-M expansion for M = 1..=max_order,
/// computed entirely in double-double so residuals down to ~1e-26 are
/// meaningful. One shared sum serves every order.
pub fn fstar_zagier_residuals(a: &BigRational, t: f64, max_order: usize) -> Vec<f64> {
    let a_dd = Dd::from_rational(a);
    let mut sum = Dd::ZERO;
    let mut m = 0.0f64;
    loop {
        let x = a_dd.add_f64(m).mul_f64(t);
        if x.hi > DD_ARGUMENT_CUTOFF {
            break;
        }
        sum = sum.add(fstar_dd(x));
        m += 1.0;
    }
    // residual_M = (sum - I/t) + sum_{n<M} b_n B_{n+1}(a)/(n+1) t^n.
    let mut acc = sum.sub(dd::EULER_GAMMA.div_f64(t));
    let mut t_pow = Dd::ONE;
    let mut out = Vec::with_capacity(max_order);
    for n in 0..max_order {
        let coeff = bseq(n) * bernoulli_poly(n + 1, a)
            / BigRational::from_integer(BigInt::from(n + 1));
        acc = acc.add(Dd::from_rational(&coeff).mul(t_pow));
        t_pow = t_pow.mul_f64(t);
        out.push(acc.to_f64());
    }
    out
}

/// Single-order variant of [`fstar_zagier_residuals`].
pub fn fstar_zagier_residual(a: &BigRational, t: f64, order: usize) -> f64 {
    fstar_zagier_residuals(a, t, order)[order - 1]
}

/// Residual of -log(1 - e^{-t}) against log(1/t) - sum_{n=1}^{M} B_n/(n n!) t^n,
/// in double-double (the residual is ~t^6 at M = 4, invisible to f64).
pub fn log_series_residual(t: f64, order: usize) -> f64 {
    let one_minus = Dd::from_f64(-t).expm1().neg(); // 1 - e^{-t}, no cancellation
    let lhs = one_minus.ln().neg();
    let mut rhs = Dd::from_f64(t).ln().neg();
    let bern = bernoulli_numbers(order);
    let mut fact = BigRational::one();
    let mut t_pow = Dd::from_f64(t);
    for n in 1..=order {
        fact *= BigRational::from_integer(BigInt::from(n));
        let coeff = &bern[n] / (BigRational::from_integer(BigInt::from(n)) * &fact);
        rhs = rhs.sub(Dd::from_rational(&coeff).mul(t_pow));
        t_pow = t_pow.mul_f64(t);
    }
    lhs.sub(rhs).to_f64()
}
