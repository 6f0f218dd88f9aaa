//! Minimal double-double arithmetic (~31 significant digits).
//!
//! The Euler-Maclaurin order checks compare series tails of size ~1e-20
//! against sums of size ~1e5; plain f64 cannot resolve that, so the
//! residual pipeline runs on these unevaluated hi+lo pairs.
//!
//! Products use Dekker splitting, so magnitudes must stay below ~1e300;
//! every caller in this crate works with |x| <= exp(130).

use num_rational::BigRational;
use num_traits::ToPrimitive;

#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

pub(crate) const LN2: Dd = Dd { hi: 0.6931471805599453, lo: 2.3190468138462996e-17 };
pub(crate) const EULER_GAMMA: Dd = Dd { hi: 0.5772156649015329, lo: -4.942915152430645e-18 };

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    // Requires |a| >= |b|.
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn split(a: f64) -> (f64, f64) {
    let c = 134_217_729.0 * a; // 2^27 + 1
    let hi = c - (c - a);
    (hi, a - hi)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let (ah, al) = split(a);
    let (bh, bl) = split(b);
    (p, ((ah * bh - p) + ah * bl + al * bh) + al * bl)
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    /// Nearest double-double to an exact rational.
    pub fn from_rational(r: &BigRational) -> Dd {
        let hi = r.to_f64().expect("rational in double range");
        let rest = r - BigRational::from_float(hi).expect("finite");
        let lo = rest.to_f64().expect("correction in double range");
        let (hi, lo) = quick_two_sum(hi, lo);
        Dd { hi, lo }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }

    pub fn add(self, rhs: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, rhs.hi);
        let (t1, t2) = two_sum(self.lo, rhs.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (hi, lo) = quick_two_sum(s1, s2 + t2);
        Dd { hi, lo }
    }

    pub fn add_f64(self, rhs: f64) -> Dd {
        let (s1, s2) = two_sum(self.hi, rhs);
        let (hi, lo) = quick_two_sum(s1, s2 + self.lo);
        Dd { hi, lo }
    }

    pub fn sub(self, rhs: Dd) -> Dd {
        self.add(rhs.neg())
    }

    pub fn mul(self, rhs: Dd) -> Dd {
        let (p1, p2) = two_prod(self.hi, rhs.hi);
        let p2 = p2 + self.hi * rhs.lo + self.lo * rhs.hi;
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }

    pub fn mul_f64(self, rhs: f64) -> Dd {
        let (p1, p2) = two_prod(self.hi, rhs);
        let (hi, lo) = quick_two_sum(p1, p2 + self.lo * rhs);
        Dd { hi, lo }
    }

    pub fn div(self, rhs: Dd) -> Dd {
        let q1 = self.hi / rhs.hi;
        let r = self.sub(rhs.mul_f64(q1));
        let q2 = r.hi / rhs.hi;
        let r = r.sub(rhs.mul_f64(q2));
        let q3 = r.hi / rhs.hi;
        let (s, e) = quick_two_sum(q1, q2);
        Dd { hi: s, lo: e }.add_f64(q3)
    }

    pub fn div_f64(self, rhs: f64) -> Dd {
        let q1 = self.hi / rhs;
        let (t1, t2) = two_prod(q1, rhs);
        let (r1, r2) = two_sum(self.hi, -t1);
        let q2 = (r1 + (r2 + self.lo - t2)) / rhs;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }
    }

    pub fn recip(self) -> Dd {
        Dd::ONE.div(self)
    }

    /// exp(x) by base-2 argument reduction and a Taylor tail.
    pub fn exp(self) -> Dd {
        if self.hi > 690.0 {
            // Out of the supported range; callers cut tails well before this.
            return Dd::from_f64(f64::INFINITY);
        }
        if self.hi < -745.0 {
            return Dd::ZERO;
        }
        let k = (self.hi / LN2.hi).round();
        let r = self.sub(LN2.mul_f64(k));
        let mut sum = Dd::ONE.add(r);
        let mut term = r;
        let mut n = 2.0;
        while n < 40.0 {
            term = term.mul(r).div_f64(n);
            sum = sum.add(term);
            if term.hi.abs() <= 1e-35 * sum.hi.abs() {
                break;
            }
            n += 1.0;
        }
        let scale = 2f64.powi(k as i32);
        Dd { hi: sum.hi * scale, lo: sum.lo * scale }
    }

    /// exp(x) - 1 without cancellation for small |x|.
    pub fn expm1(self) -> Dd {
        if self.hi.abs() >= 0.5 * LN2.hi {
            return self.exp().sub(Dd::ONE);
        }
        let mut sum = self;
        let mut term = self;
        let mut n = 2.0;
        while n < 40.0 {
            term = term.mul(self).div_f64(n);
            sum = sum.add(term);
            if term.hi.abs() <= 1e-35 * sum.hi.abs() {
                break;
            }
            n += 1.0;
        }
        sum
    }

    /// Natural log for x > 0: one Newton correction on top of the f64 log.
    pub fn ln(self) -> Dd {
        assert!(self.hi > 0.0, "ln of non-positive double-double");
        let y0 = self.hi.ln();
        let u = self.mul(Dd::from_f64(-y0).exp()).sub(Dd::ONE);
        // ln(1+u) = u - u^2/2 + O(u^3), u ~ 1e-16.
        Dd::from_f64(y0).add(u).sub(u.mul(u).mul_f64(0.5))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn assert_dd_close(a: Dd, b: Dd, tol: f64) {
        let diff = a.sub(b);
        let scale = b.hi.abs().max(1e-300);
        assert!(
            diff.hi.abs() <= tol * scale,
            "dd mismatch: ({}, {}) vs ({}, {})",
            a.hi,
            a.lo,
            b.hi,
            b.lo
        );
    }

    #[test]
    fn field_identities() {
        let a = Dd::from_rational(&rat(1, 3));
        assert_eq!(a.hi, 0.3333333333333333);
        assert!((a.lo - 1.850371707708594e-17).abs() < 1e-32);
        let b = Dd::from_rational(&rat(22, 7));
        assert_dd_close(a.add(b).sub(b), a, 1e-31);
        assert_dd_close(a.mul(b).div(b), a, 1e-30);
        assert_dd_close(a.div_f64(7.0).mul_f64(7.0), a, 1e-31);
        assert_dd_close(a.recip().recip(), a, 1e-30);
        // 1/3 * 3 = 1 to full precision.
        assert_dd_close(a.mul_f64(3.0), Dd::ONE, 1e-31);
    }

    #[test]
    fn exp_reference_values() {
        assert_dd_close(
            Dd::ONE.exp(),
            Dd { hi: 2.718281828459045, lo: 1.4456468917292502e-16 },
            1e-30,
        );
        assert_dd_close(
            Dd::from_f64(0.3).exp(),
            Dd { hi: 1.3498588075760032, lo: -7.94867034526845e-17 },
            1e-30,
        );
        assert_dd_close(
            Dd::from_f64(-50.0).exp(),
            Dd { hi: 1.9287498479639178e-22, lo: -3.7546101071240096e-39 },
            1e-29,
        );
        // exp(ln 2) = 2.
        assert_dd_close(LN2.exp(), Dd::from_f64(2.0), 1e-31);
        // Homomorphism.
        let a = Dd::from_f64(1.7);
        let b = Dd::from_f64(-0.4);
        assert_dd_close(a.add(b).exp(), a.exp().mul(b.exp()), 1e-29);
    }

    #[test]
    fn expm1_avoids_cancellation() {
        assert_dd_close(
            Dd::from_f64(1e-4).expm1(),
            Dd { hi: 0.00010000500016667084, lo: -4.448089392867845e-21 },
            1e-30,
        );
        // Consistency with exp on the large-|x| branch.
        let x = Dd::from_f64(2.5);
        assert_dd_close(x.expm1().add(Dd::ONE), x.exp(), 1e-30);
    }

    #[test]
    fn ln_inverts_exp() {
        assert_dd_close(
            Dd::from_f64(3.0).ln(),
            Dd { hi: 1.0986122886681098, lo: -9.07129723500153e-17 },
            1e-30,
        );
        for x in [1e-6, 0.037, 1.0, 2.0, 55.5] {
            let v = Dd::from_f64(x);
            assert_dd_close(v.ln().exp(), v, 1e-29);
        }
        assert_dd_close(Dd::ONE.ln(), Dd::ZERO, 1e-31);
    }

    #[test]
    fn gamma_constant_roundtrip() {
        // The stored Euler-Mascheroni pair is self-consistent.
        assert!((EULER_GAMMA.hi - 0.5772156649015329).abs() == 0.0);
        assert!(EULER_GAMMA.lo.abs() < 1e-17);
    }
}
