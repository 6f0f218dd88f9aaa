//! Special functions: exact Bernoulli numbers and polynomials, digamma at
//! rational arguments via Gauss's closed form, a Lanczos gamma, and helpers
//! for taking logs of huge integers and truncating decimal expansions.

use num_bigint::{BigInt, BigUint};
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Euler-Mascheroni constant, 30 digits.
pub const EULER_GAMMA: f64 = 0.577215664901532860606512090082;

/// Bernoulli numbers B_0..B_m, exact, under the generating-function
/// convention t e^{xt}/(e^t - 1), so B_1 = -1/2.
///
/// Computed by the recurrence sum_{k=0}^{n} C(n+1, k) B_k = 0.
pub fn bernoulli_numbers(m: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = Vec::with_capacity(m + 1);
    b.push(BigRational::one());
    for n in 1..=m {
        let mut acc = BigRational::zero();
        for (k, bk) in b.iter().enumerate() {
            let c = binomial(BigInt::from(n + 1), BigInt::from(k));
            acc += BigRational::from_integer(c) * bk;
        }
        b.push(-acc / BigRational::from_integer(BigInt::from(n + 1)));
    }
    b
}

/// Bernoulli polynomial B_n(x) = sum_k C(n, k) B_{n-k} x^k, exact.
pub fn bernoulli_poly(n: usize, x: &BigRational) -> BigRational {
    let bern = bernoulli_numbers(n);
    let mut acc = BigRational::zero();
    let mut x_pow = BigRational::one();
    for k in 0..=n {
        let c = binomial(BigInt::from(n), BigInt::from(k));
        acc += BigRational::from_integer(c) * &bern[n - k] * &x_pow;
        if k < n {
            x_pow *= x;
        }
    }
    acc
}

/// Digamma psi(r/N) for 1 <= r <= N, in double precision.
///
/// r = N means psi(1) = -gamma. For 0 < r/N < 1 the value comes from
/// Gauss's finite closed form
///
///   psi(p/q) = -gamma - ln(2q) - (pi/2) cot(pi p/q)
///              + 2 sum_{k=1}^{floor((q-1)/2)} cos(2 pi k p/q) ln sin(pi k/q)
///
/// after reducing r/N to lowest terms p/q.
pub fn digamma_rational(r: u64, modulus: u64) -> Result<f64> {
    if r == 0 || modulus == 0 || r > modulus {
        return Err(Error::InvalidResidue { residue: r, modulus });
    }
    if r == modulus {
        return Ok(-EULER_GAMMA);
    }
    let g = num_integer::gcd(r, modulus);
    let (p, q) = (r / g, modulus / g);
    let pi = std::f64::consts::PI;
    let x = p as f64 / q as f64;
    let mut acc = -EULER_GAMMA - (2.0 * q as f64).ln() - (pi / 2.0) / (pi * x).tan();
    for k in 1..=(q - 1) / 2 {
        let k = k as f64;
        acc += 2.0 * (2.0 * pi * k * x).cos() * (pi * k / q as f64).sin().ln();
    }
    Ok(acc)
}

// Lanczos approximation with g = 607/128 (Godfrey's 15-term coefficient
// set), good to ~15 significant digits over the arguments used here.
const LANCZOS_G: f64 = 607.0 / 128.0;
const LANCZOS_COEFFS: [f64; 15] = [
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
];

/// Gamma(x) for real x. Poles at non-positive integers are reported as
/// [`Error::GammaPole`].
pub fn gamma(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::NonFinite { name: "x" });
    }
    if x <= 0.0 && x == x.floor() {
        return Err(Error::GammaPole { argument: x });
    }
    if x < 0.5 {
        // Reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x).
        let pi = std::f64::consts::PI;
        return Ok(pi / ((pi * x).sin() * gamma(1.0 - x)?));
    }
    let z = x - 1.0;
    let mut a = LANCZOS_COEFFS[0];
    for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        a += c / (z + i as f64);
    }
    let base = z + LANCZOS_G + 0.5;
    Ok((2.0 * std::f64::consts::PI).sqrt() * base.powf(z + 0.5) * (-base).exp() * a)
}

/// Natural log of a positive big integer, relative error below 1e-12.
///
/// Uses the top 64 bits plus the bit length, so the cost is independent
/// of the integer's size.
pub fn log_of_bigcount(v: &BigUint) -> Result<f64> {
    if v.is_zero() {
        return Err(Error::NonPositive { name: "v", value: 0.0 });
    }
    let bits = v.bits();
    if bits <= 53 {
        return Ok(v.to_f64().expect("fits in f64").ln());
    }
    let shift = bits - 64;
    let top = (v >> shift).to_u64().expect("64 bits after shift") as f64;
    Ok(top.ln() + shift as f64 * std::f64::consts::LN_2)
}

/// Decimal string of `x` truncated toward zero after `d` fractional digits.
///
/// Rendered with 3 guard digits first so binary-to-decimal conversion does
/// not flip a boundary digit.
pub fn truncate_decimals(x: f64, d: usize) -> Result<String> {
    if !x.is_finite() {
        return Err(Error::NonFinite { name: "x" });
    }
    let rendered = format!("{:.*}", d + 3, x);
    let dot = rendered.find('.').expect("fixed-point format has a dot");
    if d == 0 {
        Ok(rendered[..dot].to_string())
    } else {
        Ok(rendered[..dot + 1 + d].to_string())
    }
}
