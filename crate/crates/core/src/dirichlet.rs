//! Dirichlet characters modulo N, built on an explicit generator/discrete-log
//! model of the unit group (Z/NZ)*.
//!
//! Odd prime powers contribute a primitive root (found by exhaustive order
//! testing; moduli here are small), 2^k for k >= 3 contributes -1 and 5,
//! and components are glued by CRT. A character is an exponent vector
//! against the generators; its value at a unit a is
//! exp(2 pi i sum_i c_i dlog_i(a) / e_i), and 0 off the units.
//!
//! `l_value_at_zero` evaluates L(0, psi) for non-principal psi by the
//! finite sum -(1/N) sum_{a=1}^{N} psi(a) a.

use std::collections::HashMap;
use std::sync::Arc;

use num_complex::Complex64;
use num_integer::gcd;

use crate::error::{Error, Result};

/// Generators, orders, and the discrete-log table of (Z/NZ)*.
#[derive(Debug)]
pub struct UnitGroupStructure {
    modulus: u64,
    generators: Vec<u64>,
    orders: Vec<u64>,
    dlog: HashMap<u64, Vec<u64>>,
}

impl UnitGroupStructure {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    /// Orders e_i of the generators; their product is phi(N).
    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    /// Exponent vector of a unit, or None when gcd(a, N) > 1.
    pub fn dlog(&self, a: u64) -> Option<&[u64]> {
        self.dlog.get(&(a % self.modulus)).map(Vec::as_slice)
    }

    pub fn order(&self) -> u64 {
        self.orders.iter().product()
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut k = 0;
            while n % p == 0 {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Euler's totient phi(N), via factorization.
pub fn totient(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .map(|(p, k)| p.pow(k - 1) * (p - 1))
        .product::<u64>()
        .max(1)
}

/// Multiplicative inverse of r mod N, in 1..N. Requires gcd(r, N) = 1
/// and N >= 2.
pub fn inverse_mod(r: u64, modulus: u64) -> Result<u64> {
    if modulus < 2 || gcd(r % modulus, modulus) != 1 {
        return Err(Error::NotCoprime { residue: r, modulus });
    }
    let (mut old_r, mut cur_r) = (r as i128 % modulus as i128, modulus as i128);
    let (mut old_s, mut cur_s) = (1i128, 0i128);
    while cur_r != 0 {
        let q = old_r / cur_r;
        (old_r, cur_r) = (cur_r, old_r - q * cur_r);
        (old_s, cur_s) = (cur_s, old_s - q * cur_s);
    }
    Ok(old_s.rem_euclid(modulus as i128) as u64)
}

/// Smallest primitive root of an odd prime power, by exhaustive order
/// testing against the prime divisors of phi.
fn primitive_root(prime_power: u64, phi: u64) -> u64 {
    let phi_primes: Vec<u64> = factorize(phi).into_iter().map(|(p, _)| p).collect();
    for g in 2..prime_power {
        if gcd(g, prime_power) != 1 {
            continue;
        }
        if phi_primes.iter().all(|&q| pow_mod(g, phi / q, prime_power) != 1) {
            return g;
        }
    }
    unreachable!("odd prime powers are cyclic");
}

/// Lift `value` mod `component` to x mod N with x = 1 mod N/component.
fn crt_lift(value: u64, component: u64, modulus: u64) -> u64 {
    let rest = modulus / component;
    if rest == 1 {
        return value % modulus;
    }
    // x = value * rest * (rest^-1 mod component) + rest_inverse_part
    let inv_rest = inverse_mod(rest % component, component).expect("coprime CRT parts");
    let a = mul_mod(mul_mod(value % component, rest, modulus), inv_rest, modulus);
    let inv_comp = inverse_mod(component % rest, rest).expect("coprime CRT parts");
    let b = mul_mod(component, inv_comp, modulus);
    (a + b) % modulus
}

/// Decompose (Z/NZ)* into cyclic factors and tabulate discrete logs.
pub fn unit_group(modulus: u64) -> UnitGroupStructure {
    assert!(modulus >= 1, "modulus must be positive");
    let mut generators = Vec::new();
    let mut orders = Vec::new();
    for (p, k) in factorize(modulus) {
        let pe = p.pow(k);
        if p == 2 {
            match k {
                1 => {}
                2 => {
                    generators.push(crt_lift(3, 4, modulus));
                    orders.push(2);
                }
                _ => {
                    generators.push(crt_lift(pe - 1, pe, modulus));
                    orders.push(2);
                    generators.push(crt_lift(5, pe, modulus));
                    orders.push(pe / 4);
                }
            }
        } else {
            let phi = pe / p * (p - 1);
            generators.push(crt_lift(primitive_root(pe, phi), pe, modulus));
            orders.push(phi);
        }
    }

    // Odometer over exponent vectors; each step multiplies by one
    // generator, so the running product tracks the vector exactly.
    let group_order: u64 = orders.iter().product();
    let mut dlog = HashMap::with_capacity(group_order as usize);
    let mut exponents = vec![0u64; orders.len()];
    let mut current = 1 % modulus;
    loop {
        dlog.insert(current, exponents.clone());
        let mut i = 0;
        loop {
            if i == orders.len() {
                debug_assert_eq!(dlog.len() as u64, group_order);
                return UnitGroupStructure { modulus, generators, orders, dlog };
            }
            current = mul_mod(current, generators[i], modulus);
            exponents[i] += 1;
            if exponents[i] < orders[i] {
                break;
            }
            exponents[i] = 0;
            i += 1;
        }
    }
}

/// A Dirichlet character mod N: exponents c_i against the group generators.
#[derive(Clone, Debug)]
pub struct DirichletCharacter {
    structure: Arc<UnitGroupStructure>,
    exponents: Vec<u64>,
}

impl DirichletCharacter {
    pub fn modulus(&self) -> u64 {
        self.structure.modulus()
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    /// The argument of psi(a) as an exact fraction of a full turn, reduced
    /// mod 1; None when a is not a unit.
    fn phase(&self, a: u64) -> Option<(u64, u64)> {
        let dlog = self.structure.dlog(a)?;
        let (mut num, mut den) = (0u64, 1u64);
        for ((c, d), e) in self.exponents.iter().zip(dlog).zip(self.structure.orders()) {
            let part = (c * d) % e; // c, d < e <= phi(N), no overflow for small N
            let g = gcd(part, *e);
            let (pn, pd) = (part / g, e / g);
            num = num * pd + pn * den;
            den *= pd;
            let g = gcd(num, den);
            num /= g;
            den /= g;
            num %= den;
        }
        Some((num, den))
    }

    /// psi(a): a root of unity on units, 0 elsewhere.
    pub fn eval(&self, a: u64) -> Complex64 {
        match self.phase(a) {
            None => Complex64::new(0.0, 0.0),
            Some((num, den)) => {
                Complex64::from_polar(1.0, std::f64::consts::TAU * num as f64 / den as f64)
            }
        }
    }

    /// psi(-1) = -1? Decided on the exact phase, not floating point.
    pub fn is_odd(&self) -> bool {
        let minus_one = (self.modulus() + self.modulus() - 1) % self.modulus();
        self.phase(minus_one) == Some((1, 2))
    }

    /// All-zero exponent vector.
    pub fn is_principal(&self) -> bool {
        self.exponents.iter().all(|&c| c == 0)
    }

    pub fn conjugate(&self) -> Self {
        let exponents = self
            .exponents
            .iter()
            .zip(self.structure.orders())
            .map(|(c, e)| (e - c) % e)
            .collect();
        DirichletCharacter { structure: Arc::clone(&self.structure), exponents }
    }

    /// L(0, psi) = -(1/N) sum_{a=1}^{N} psi(a) a, for non-principal psi.
    ///
    /// The sum is finite and exact up to the complex roots of unity; even
    /// non-principal characters give 0, odd ones the values entering the
    /// difference asymptotic.
    pub fn l_value_at_zero(&self) -> Result<Complex64> {
        if self.is_principal() {
            return Err(Error::PrincipalCharacter);
        }
        let n = self.modulus();
        let mut acc = Complex64::new(0.0, 0.0);
        for a in 1..=n {
            acc += self.eval(a) * a as f64;
        }
        Ok(-acc / n as f64)
    }
}

/// All phi(N) characters mod N, one per exponent vector. The order is the
/// odometer order over exponent vectors; the principal character is first.
pub fn characters(modulus: u64) -> Vec<DirichletCharacter> {
    let structure = Arc::new(unit_group(modulus));
    let orders = structure.orders().to_vec();
    let count = structure.order();
    let mut out = Vec::with_capacity(count as usize);
    let mut exponents = vec![0u64; orders.len()];
    loop {
        out.push(DirichletCharacter { structure: Arc::clone(&structure), exponents: exponents.clone() });
        let mut i = 0;
        loop {
            if i == orders.len() {
                return out;
            }
            exponents[i] += 1;
            if exponents[i] < orders[i] {
                break;
            }
            exponents[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn totient_values() {
        assert_eq!(totient(1), 1);
        assert_eq!(totient(2), 1);
        assert_eq!(totient(9), 6);
        assert_eq!(totient(12), 4);
        // Brute-force gcd count.
        for n in 1..=400u64 {
            let brute = (1..=n).filter(|&a| gcd(a, n) == 1).count() as u64;
            assert_eq!(totient(n), brute, "phi({n})");
        }
    }

    #[test]
    fn inverse_mod_values() {
        assert_eq!(inverse_mod(3, 7).unwrap(), 5);
        assert_eq!(inverse_mod(1, 9).unwrap(), 1);
        assert_eq!(inverse_mod(4, 9).unwrap(), 7);
        assert!(inverse_mod(2, 4).is_err());
        assert!(inverse_mod(5, 1).is_err());
        for n in 2..=60u64 {
            for r in 1..n {
                if gcd(r, n) == 1 {
                    let inv = inverse_mod(r, n).unwrap();
                    assert_eq!(r * inv % n, 1, "inverse of {r} mod {n}");
                }
            }
        }
    }

    #[test]
    fn unit_group_shapes() {
        let g4 = unit_group(4);
        assert_eq!(g4.orders(), &[2]);
        let g5 = unit_group(5);
        assert_eq!(g5.orders(), &[4]);
        let g8 = unit_group(8);
        let mut o8 = g8.orders().to_vec();
        o8.sort_unstable();
        assert_eq!(o8, vec![2, 2]);
        // Brute-force check for N = 8: every generator has its stated order.
        for (g, e) in g8.generators().iter().zip(g8.orders()) {
            let mut x = 1u64;
            for step in 1..=*e {
                x = x * g % 8;
                if step < *e {
                    assert_ne!(x, 1, "generator {g} order below {e}");
                }
            }
            assert_eq!(x, 1, "generator {g} must have order {e}");
        }
    }

    #[test]
    fn dlog_is_a_homomorphism() {
        for n in [5u64, 8, 12, 15, 16, 21, 24, 36, 40] {
            let g = unit_group(n);
            let units: Vec<u64> = (0..n).filter(|&a| g.dlog(a).is_some()).collect();
            assert_eq!(units.len() as u64, totient(n));
            for (i, gen) in g.generators().iter().enumerate() {
                let d = g.dlog(*gen).unwrap();
                for (j, v) in d.iter().enumerate() {
                    assert_eq!(*v, u64::from(j == i), "dlog of generator {gen} mod {n}");
                }
            }
            for &a in units.iter().take(8) {
                for &b in units.iter().take(8) {
                    let da = g.dlog(a).unwrap();
                    let db = g.dlog(b).unwrap();
                    let dab = g.dlog(a * b % n).unwrap();
                    for k in 0..da.len() {
                        assert_eq!((da[k] + db[k]) % g.orders()[k], dab[k]);
                    }
                }
            }
        }
    }

    #[test]
    fn character_counts() {
        for n in 1..=50u64 {
            assert_eq!(characters(n).len() as u64, totient(n), "modulus {n}");
        }
        assert_eq!(characters(3).len(), 2);
        assert_eq!(characters(4).len(), 2);
        assert_eq!(characters(12).len(), 4);
    }

    #[test]
    fn odd_character_counts() {
        for n in 1..=40u64 {
            let odd = characters(n).iter().filter(|c| c.is_odd()).count() as u64;
            if n <= 2 {
                assert_eq!(odd, 0, "no odd characters mod {n}");
            } else {
                assert_eq!(odd, totient(n) / 2, "odd characters mod {n}");
            }
        }
    }

    #[test]
    fn principal_is_even_and_trivial_on_units() {
        for n in [3u64, 4, 7, 12] {
            let chars = characters(n);
            let principal = chars.iter().find(|c| c.is_principal()).unwrap();
            assert!(!principal.is_odd());
            for a in 1..n {
                if gcd(a, n) == 1 {
                    assert!((principal.eval(a) - Complex64::new(1.0, 0.0)).norm() < 1e-15);
                } else {
                    assert_eq!(principal.eval(a), Complex64::new(0.0, 0.0));
                }
            }
        }
    }

    #[test]
    fn complete_multiplicativity() {
        for n in [5u64, 8, 12, 15, 21] {
            for chi in characters(n) {
                for a in 1..n {
                    for b in 1..n {
                        let lhs = chi.eval(a * b % n);
                        let rhs = chi.eval(a) * chi.eval(b);
                        assert!((lhs - rhs).norm() < 1e-12, "psi({a}*{b}) mod {n}");
                    }
                }
            }
        }
    }

    #[test]
    fn orthogonality() {
        for n in [3u64, 4, 5, 8, 12, 30] {
            let chars = characters(n);
            for (i, psi) in chars.iter().enumerate() {
                for (j, chi) in chars.iter().enumerate() {
                    let s: Complex64 = (1..=n).map(|a| psi.eval(a) * chi.eval(a).conj()).sum();
                    let expect = if i == j { totient(n) as f64 } else { 0.0 };
                    assert!(
                        (s - Complex64::new(expect, 0.0)).norm() < 1e-9,
                        "orthogonality mod {n}: chars {i}, {j} gave {s}"
                    );
                }
            }
        }
    }

    #[test]
    fn l_zero_values() {
        // Odd character mod 4: -(1/4)(1*1 + (-1)*3) = 1/2.
        let odd4 = characters(4).into_iter().find(|c| c.is_odd()).unwrap();
        let v = odd4.l_value_at_zero().unwrap();
        assert!((v - Complex64::new(0.5, 0.0)).norm() < 1e-14);
        // Odd character mod 3: -(1/3)(1 - 2) = 1/3.
        let odd3 = characters(3).into_iter().find(|c| c.is_odd()).unwrap();
        let v = odd3.l_value_at_zero().unwrap();
        assert!((v - Complex64::new(1.0 / 3.0, 0.0)).norm() < 1e-14);
        // Even non-principal characters vanish at 0.
        for n in [5u64, 8, 12, 16, 21] {
            for chi in characters(n) {
                if chi.is_principal() || chi.is_odd() {
                    continue;
                }
                assert!(chi.l_value_at_zero().unwrap().norm() < 1e-12, "even L(0) mod {n}");
            }
        }
        // Principal rejected.
        let principal = characters(5).into_iter().find(|c| c.is_principal()).unwrap();
        assert!(matches!(principal.l_value_at_zero(), Err(Error::PrincipalCharacter)));
    }

    #[test]
    fn l_zero_conjugation_symmetry() {
        for n in [5u64, 7, 9, 11, 13, 15, 16, 30] {
            for chi in characters(n) {
                if chi.is_principal() {
                    continue;
                }
                let a = chi.l_value_at_zero().unwrap();
                let b = chi.conjugate().l_value_at_zero().unwrap();
                assert!((a.conj() - b).norm() < 1e-12, "conjugation symmetry mod {n}");
            }
        }
    }
}
