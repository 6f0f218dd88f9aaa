//! Asymptotic main terms for residue-class part counts, the two-term
//! difference approximation, and the circle-method coefficient formulas
//! for products xi(q) L(q) with polynomial or logarithmic singular part.
//!
//! Everything of size exp(pi sqrt(2n/3)) is carried as a [`LogValue`];
//! only O(1) brackets and coefficients live in plain doubles.

use num_complex::Complex64;

use crate::dirichlet::{characters, inverse_mod, totient};
use crate::error::{Error, Result};
use crate::logvalue::LogValue;
use crate::partitions::{PartCount, ResidueClass};
use crate::specfun::{digamma_rational, gamma, log_of_bigcount};

/// Input data for the circle-method expansions: L(e^{-t}) behaves like
/// t^{-B} (sum alpha_l t^l + ...) and xi(e^{-t}) like t^beta e^{c^2/t}.
#[derive(Clone, Debug)]
pub struct WrightParams {
    pub b: f64,
    pub beta: f64,
    /// c > 0; the saddle scale, exp(2 c sqrt n) in the answer.
    pub c: f64,
    /// alpha_0, alpha_1, ... of the singular expansion of L.
    pub alphas: Vec<f64>,
}

impl WrightParams {
    /// Parameters that make xi L the partition generating function:
    /// B = 0, beta = 1/2, c = pi/sqrt(6), alpha_0 = (2 pi)^{-1/2}.
    pub fn partition_numbers() -> Self {
        WrightParams {
            b: 0.0,
            beta: 0.5,
            c: std::f64::consts::PI / 6f64.sqrt(),
            alphas: vec![(2.0 * std::f64::consts::PI).sqrt().recip()],
        }
    }
}

/// The main term of the part-count asymptotic, split into its pieces:
///
///   exp(pi sqrt(2n/3)) n^{-1/2} / (4 pi N sqrt 2)
///     * [ log n - log(pi^2/6) - 2 (psi(r/N) + log N) ]
///
/// `prefactor` is the exponential piece, `bracket` the slowly growing
/// logarithmic factor, `total` their product.
#[derive(Clone, Copy, Debug)]
pub struct MainTermBreakdown {
    pub n: u64,
    pub class: ResidueClass,
    pub prefactor: LogValue,
    pub bracket: f64,
    pub total: LogValue,
}

/// Evaluate the main term for T(n; r, N). Requires n >= 1.
pub fn main_term_log(n: u64, class: ResidueClass) -> Result<MainTermBreakdown> {
    if n == 0 {
        return Err(Error::NonPositive { name: "n", value: 0.0 });
    }
    let pi = std::f64::consts::PI;
    let nf = n as f64;
    let modulus = class.modulus() as f64;
    let psi = digamma_rational(class.residue(), class.modulus())?;
    let prefactor = LogValue::from_ln(
        pi * (2.0 * nf / 3.0).sqrt() - 0.5 * nf.ln() - (4.0 * pi * modulus * 2f64.sqrt()).ln(),
    );
    let bracket = nf.ln() - (pi * pi / 6.0).ln() - 2.0 * (psi + modulus.ln());
    let total = prefactor * LogValue::from_f64(bracket);
    Ok(MainTermBreakdown { n, class, prefactor, bracket, total })
}

/// Q(n; r, N): the exact count divided by its main term, as a plain double
/// (the quotient is near 1 long before the magnitudes are representable).
pub fn ratio_q(exact: &PartCount) -> Result<f64> {
    let main = main_term_log(exact.n, exact.class)?;
    if main.total.sign() <= 0 {
        return Err(Error::NonPositiveMainTerm);
    }
    let log_exact = log_of_bigcount(&exact.value)?;
    Ok((log_exact - main.total.log_abs()).exp())
}

/// Two-term approximation to the difference T(n; r, N) - T(n; N-r, N) for
/// coprime r < N, N >= 3:
///
///   cot(pi r/N)/(2 sqrt2 N) * exp(pi sqrt((2/3)(n - 1/24)))/sqrt(n - 1/24)
///   - (1/(4 sqrt3 phi(N))) sum_{psi odd} psi(r') L(0, psi)
///       * exp(pi sqrt((2/3)(n - 1/24)))/(n - 1/24)
///
/// where r' is the inverse of r mod N. The character sum is real up to
/// rounding; its imaginary part is checked below 1e-9 and dropped.
pub fn diff_main_term(n: u64, r: u64, modulus: u64) -> Result<LogValue> {
    if modulus < 3 {
        return Err(Error::ModulusTooSmall { modulus });
    }
    if r == 0 || r >= modulus {
        return Err(Error::InvalidResidue { residue: r, modulus });
    }
    let r_inv = inverse_mod(r, modulus)?; // also rejects gcd(r, N) > 1
    let pi = std::f64::consts::PI;
    let shifted = n as f64 - 1.0 / 24.0;
    let expo = pi * (2.0 / 3.0 * shifted).sqrt();

    let cot = 1.0 / (pi * r as f64 / modulus as f64).tan();
    let first = LogValue::from_f64(cot / (2.0 * 2f64.sqrt() * modulus as f64))
        * LogValue::from_ln(expo - 0.5 * shifted.ln());

    let mut char_sum = Complex64::new(0.0, 0.0);
    for psi in characters(modulus) {
        if psi.is_odd() {
            char_sum += psi.eval(r_inv) * psi.l_value_at_zero()?;
        }
    }
    assert!(
        char_sum.im.abs() < 1e-9 * (char_sum.norm() + 1.0),
        "character sum unexpectedly non-real: {char_sum}"
    );
    let phi = totient(modulus) as f64;
    let second = LogValue::from_f64(char_sum.re / (4.0 * 3f64.sqrt() * phi))
        * LogValue::from_ln(expo - shifted.ln());

    Ok(first - second)
}

/// Coefficient w_{s,j} of the polynomial-type expansion:
///
///   w_{s,j} = c^{s+beta-B+1/2} / ((-4c)^j 2 sqrt(pi))
///             * Gamma(s+beta-B+j+3/2) / (j! Gamma(s+beta-B-j+3/2))
///
/// Gamma poles surface as [`Error::GammaPole`].
pub fn wright_poly_coeff(s: u32, j: u32, params: &WrightParams) -> Result<f64> {
    if params.c <= 0.0 {
        return Err(Error::NonPositive { name: "c", value: params.c });
    }
    let x = s as f64 + params.beta - params.b;
    let c_pow = params.c.powf(x + 0.5);
    let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
    let denom_scale = (4.0 * params.c).powi(j as i32) * 2.0 * std::f64::consts::PI.sqrt();
    let mut j_fact = 1.0;
    for i in 2..=j {
        j_fact *= i as f64;
    }
    let num = gamma(x + j as f64 + 1.5)?;
    let den = gamma(x - j as f64 + 1.5)?;
    Ok(sign * c_pow / denom_scale * num / (j_fact * den))
}

/// The truncated polynomial-type expansion
///
///   a(n) ~ exp(2 c sqrt n) n^{(2B - 2beta - 3)/4} sum_{j<M} p_j n^{-j/2},
///   p_j = sum_{s<=j} alpha_s w_{s, j-s},
///
/// assembled in log space. Needs at least M alpha coefficients.
pub fn wright_poly_expansion(params: &WrightParams, n: u64, m: usize) -> Result<LogValue> {
    if params.alphas.len() < m {
        return Err(Error::InsufficientCoefficients { needed: m, available: params.alphas.len() });
    }
    if m == 0 {
        return Err(Error::NonPositive { name: "M", value: 0.0 });
    }
    if n == 0 {
        return Err(Error::NonPositive { name: "n", value: 0.0 });
    }
    let nf = n as f64;
    let mut poly = 0.0;
    for j in 0..m {
        let mut pj = 0.0;
        for s in 0..=j {
            pj += params.alphas[s] * wright_poly_coeff(s as u32, (j - s) as u32, params)?;
        }
        poly += pj * nf.powf(-(j as f64) / 2.0);
    }
    let log_part = 2.0 * params.c * nf.sqrt() + (2.0 * params.b - 2.0 * params.beta - 3.0) / 4.0 * nf.ln();
    Ok(LogValue::from_ln(log_part) * LogValue::from_f64(poly))
}

/// The logarithmic-type main term
///
///   a(n) ~ -exp(2 c sqrt n) n^{-1/2} (alpha_0 / (4 sqrt pi)) (log n - 2 log c),
///
/// in log space. A vanishing bracket (log n = 2 log c) yields zero.
pub fn wright_log_main(alpha0: f64, c: f64, n: u64) -> LogValue {
    let nf = n as f64;
    let bracket = nf.ln() - 2.0 * c.ln();
    let coeff = -alpha0 / (4.0 * std::f64::consts::PI.sqrt());
    LogValue::from_ln(2.0 * c * nf.sqrt() - 0.5 * nf.ln())
        * LogValue::from_f64(coeff)
        * LogValue::from_f64(bracket)
}
