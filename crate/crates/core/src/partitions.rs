//! Exact partition counts and residue-class part statistics.
//!
//! - [`PartitionTable`]: p(0)..p(max_n) by Euler's pentagonal-number
//!   recurrence, O(n sqrt n) big-integer additions.
//! - [`parts_count_exact`]: the total number of parts congruent to
//!   r (mod N) over all partitions of n, via the divisor-class convolution
//!   sum_{k=1}^{n} d_{r,N}(k) p(n-k).
//! - [`parts_count_enumerate`]: the same count by literal enumeration of
//!   partitions; the independent oracle for small n.
//! - [`total_parts`]: sum over all residues, i.e. sum_k d(k) p(n-k) with
//!   the full divisor count.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Refuse to enumerate partitions past this size; p(60) is close to a
/// million partitions and growth is subexponential but brutal.
pub const ENUMERATION_LIMIT: u64 = 60;

/// A residue class r (mod N) with 1 <= r <= N; r = N stands for the class
/// of 0, so every class has a representative in 1..=N.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ResidueClass {
    residue: u64,
    modulus: u64,
}

impl ResidueClass {
    /// Build the class r (mod N). r = 0 is normalized to r = N; values
    /// above N are rejected. gcd(r, N) > 1 is allowed.
    pub fn new(residue: u64, modulus: u64) -> Result<Self> {
        if modulus == 0 || residue > modulus {
            return Err(Error::InvalidResidue { residue, modulus });
        }
        let residue = if residue == 0 { modulus } else { residue };
        Ok(ResidueClass { residue, modulus })
    }

    /// The representative in 1..=N.
    pub fn residue(&self) -> u64 {
        self.residue
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Does the positive integer `k` lie in this class?
    pub fn contains(&self, k: u64) -> bool {
        k % self.modulus == self.residue % self.modulus
    }
}

impl std::fmt::Display for ResidueClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} (mod {})", self.residue, self.modulus)
    }
}

/// p(0)..p(max_n), exact. Immutable after construction, so shared
/// concurrent reads are free.
#[derive(Clone, Debug)]
pub struct PartitionTable {
    values: Vec<BigUint>,
}

impl PartitionTable {
    /// Fill the table by the pentagonal-number recurrence
    /// p(i) = sum_{k>=1} (-1)^{k+1} [p(i - k(3k-1)/2) + p(i - k(3k+1)/2)].
    pub fn up_to(max_n: usize) -> Self {
        let mut values: Vec<BigUint> = Vec::with_capacity(max_n + 1);
        values.push(BigUint::one());
        for i in 1..=max_n {
            let mut add = BigUint::zero();
            let mut sub = BigUint::zero();
            let mut k = 1usize;
            loop {
                let g1 = k * (3 * k - 1) / 2;
                if g1 > i {
                    break;
                }
                let acc = if k % 2 == 1 { &mut add } else { &mut sub };
                *acc += &values[i - g1];
                let g2 = k * (3 * k + 1) / 2;
                if g2 <= i {
                    let acc = if k % 2 == 1 { &mut add } else { &mut sub };
                    *acc += &values[i - g2];
                }
                k += 1;
            }
            // The positive pentagonal contributions always dominate.
            values.push(add - sub);
        }
        PartitionTable { values }
    }

    pub fn max_n(&self) -> usize {
        self.values.len() - 1
    }

    /// p(k). Panics if k exceeds the table.
    pub fn p(&self, k: usize) -> &BigUint {
        &self.values[k]
    }

    pub fn values(&self) -> &[BigUint] {
        &self.values
    }

    fn check_len(&self, n: u64) -> Result<()> {
        if (n as usize) > self.max_n() {
            Err(Error::TableTooShort { needed: n as usize, max_n: self.max_n() })
        } else {
            Ok(())
        }
    }
}

/// The count T(n; r, N): parts congruent to r (mod N) summed over all
/// partitions of n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartCount {
    pub n: u64,
    pub class: ResidueClass,
    pub value: BigUint,
}

/// d_{r,N}(k) for 1 <= k <= max_k: the number of divisors of k lying in
/// `class`. Index 0 of the result is unused (zero).
///
/// Sieve over divisors in the class, O(max_k log max_k).
pub fn divisor_class_sieve(max_k: usize, class: ResidueClass) -> Vec<u64> {
    let mut counts = vec![0u64; max_k + 1];
    let mut d = class.residue() % class.modulus();
    if d == 0 {
        d = class.modulus();
    }
    while d as usize <= max_k {
        let mut m = d as usize;
        while m <= max_k {
            counts[m] += 1;
            m += d as usize;
        }
        d += class.modulus();
    }
    counts
}

/// Full divisor-count sieve d(1..=max_k).
fn divisor_sieve(max_k: usize) -> Vec<u64> {
    let mut counts = vec![0u64; max_k + 1];
    for d in 1..=max_k {
        let mut m = d;
        while m <= max_k {
            counts[m] += 1;
            m += d;
        }
    }
    counts
}

/// Exact T(n; r, N) by the convolution
/// sum_{k=1}^{n} d_{r,N}(k) p(n-k).
///
/// One pass of big-integer multiply-adds after the sieve. The table must
/// reach n.
pub fn parts_count_exact(n: u64, class: ResidueClass, table: &PartitionTable) -> Result<PartCount> {
    table.check_len(n)?;
    let sieve = divisor_class_sieve(n as usize, class);
    Ok(PartCount { n, class, value: convolve(&sieve, n as usize, table) })
}

/// Total number of parts over all partitions of n (all residues together):
/// sum_{k=1}^{n} d(k) p(n-k).
pub fn total_parts(n: u64, table: &PartitionTable) -> Result<BigUint> {
    table.check_len(n)?;
    let sieve = divisor_sieve(n as usize);
    Ok(convolve(&sieve, n as usize, table))
}

fn convolve(divisor_counts: &[u64], n: usize, table: &PartitionTable) -> BigUint {
    let mut acc = BigUint::zero();
    for k in 1..=n {
        if divisor_counts[k] > 0 {
            acc += table.p(n - k) * divisor_counts[k];
        }
    }
    acc
}

/// Visit every partition of n as a non-increasing slice of parts.
/// The empty partition of 0 is visited once.
pub fn for_each_partition<F: FnMut(&[u64])>(n: u64, mut visit: F) {
    let mut parts = Vec::with_capacity(n as usize);
    descend(n, n, &mut parts, &mut visit);
}

fn descend<F: FnMut(&[u64])>(remaining: u64, max_part: u64, parts: &mut Vec<u64>, visit: &mut F) {
    if remaining == 0 {
        visit(parts);
        return;
    }
    let mut part = max_part.min(remaining);
    while part >= 1 {
        parts.push(part);
        descend(remaining - part, part, parts, visit);
        parts.pop();
        part -= 1;
    }
}

/// T(n; r, N) by explicit generation of all partitions of n. Guarded by
/// [`ENUMERATION_LIMIT`]; this is the oracle the convolution is checked
/// against.
pub fn parts_count_enumerate(n: u64, class: ResidueClass) -> Result<PartCount> {
    if n > ENUMERATION_LIMIT {
        return Err(Error::EnumerationTooLarge { n, limit: ENUMERATION_LIMIT });
    }
    let mut total: u128 = 0;
    for_each_partition(n, |parts| {
        total += parts.iter().filter(|&&p| class.contains(p)).count() as u128;
    });
    Ok(PartCount { n, class, value: BigUint::from(total) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cls(r: u64, n: u64) -> ResidueClass {
        ResidueClass::new(r, n).unwrap()
    }

    /// Coin-counting DP oracle for p(n), independent of the pentagonal
    /// recurrence: count multisets of parts 1..=max summing to each n.
    fn partition_dp(max: usize) -> Vec<BigUint> {
        let mut dp = vec![BigUint::zero(); max + 1];
        dp[0] = BigUint::one();
        for coin in 1..=max {
            for j in coin..=max {
                let add = dp[j - coin].clone();
                dp[j] += add;
            }
        }
        dp
    }

    #[test]
    fn residue_class_normalization() {
        assert_eq!(cls(0, 5).residue(), 5);
        assert_eq!(cls(3, 5).residue(), 3);
        assert!(ResidueClass::new(6, 5).is_err());
        assert!(ResidueClass::new(1, 0).is_err());
        assert!(cls(3, 3).contains(6));
        assert!(cls(3, 3).contains(9));
        assert!(!cls(3, 3).contains(7));
        assert!(cls(1, 1).contains(17), "modulus 1 contains everything");
    }

    #[test]
    fn table_small_values() {
        let t = PartitionTable::up_to(10);
        let expect = [1u32, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42];
        for (k, e) in expect.iter().enumerate() {
            assert_eq!(t.p(k), &BigUint::from(*e), "p({k})");
        }
    }

    #[test]
    fn table_matches_dp_oracle() {
        let t = PartitionTable::up_to(100);
        let dp = partition_dp(100);
        assert_eq!(t.values(), &dp[..]);
        assert_eq!(t.p(100).to_string(), "190569292");
    }

    #[test]
    fn table_monotone() {
        let t = PartitionTable::up_to(200);
        for k in 2..=200 {
            assert!(t.p(k) >= t.p(k - 1));
        }
    }

    #[test]
    fn divisor_class_examples() {
        assert_eq!(divisor_class_sieve(6, cls(1, 3))[6], 1);
        assert_eq!(divisor_class_sieve(10, cls(1, 3))[10], 2);
        assert_eq!(divisor_class_sieve(7, cls(7, 7))[7], 1);
        // Trial-division cross-check.
        for k in 1..=200u64 {
            for n in 1..=6 {
                for r in 1..=n {
                    let direct = (1..=k)
                        .filter(|&d| k % d == 0 && d % n == r % n)
                        .count() as u64;
                    let sieved = divisor_class_sieve(k as usize, cls(r, n))[k as usize];
                    assert_eq!(sieved, direct, "d_{{{r},{n}}}({k})");
                }
            }
        }
    }

    #[test]
    fn intro_example_counts() {
        let t = PartitionTable::up_to(5);
        assert_eq!(parts_count_exact(5, cls(1, 3), &t).unwrap().value, BigUint::from(13u32));
        assert_eq!(parts_count_exact(5, cls(2, 3), &t).unwrap().value, BigUint::from(5u32));
        assert_eq!(parts_count_exact(5, cls(3, 3), &t).unwrap().value, BigUint::from(2u32));
        assert_eq!(total_parts(5, &t).unwrap(), BigUint::from(20u32));
    }

    #[test]
    fn enumerate_matches_exact() {
        let t = PartitionTable::up_to(20);
        for n in 0..=20u64 {
            for modulus in 1..=6u64 {
                for r in 1..=modulus {
                    let c = cls(r, modulus);
                    let a = parts_count_enumerate(n, c).unwrap();
                    let b = parts_count_exact(n, c, &t).unwrap();
                    assert_eq!(a.value, b.value, "n={n}, class {c}");
                }
            }
        }
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(parts_count_enumerate(5, cls(2, 3)).unwrap().value, BigUint::from(5u32));
        assert_eq!(parts_count_enumerate(1, cls(1, 1)).unwrap().value, BigUint::from(1u32));
        let t = PartitionTable::up_to(12);
        assert_eq!(
            parts_count_enumerate(12, cls(2, 4)).unwrap().value,
            parts_count_exact(12, cls(2, 4), &t).unwrap().value,
        );
        assert!(parts_count_enumerate(61, cls(1, 2)).is_err());
    }

    #[test]
    fn sum_rule_over_residues() {
        let t = PartitionTable::up_to(120);
        for n in [0u64, 1, 7, 40, 120] {
            let total = total_parts(n, &t).unwrap();
            for modulus in 1..=6u64 {
                let sum: BigUint = (1..=modulus)
                    .map(|r| parts_count_exact(n, cls(r, modulus), &t).unwrap().value)
                    .sum();
                assert_eq!(sum, total, "sum rule at n={n}, N={modulus}");
            }
            // Degenerate modulus: one class holds every part.
            assert_eq!(parts_count_exact(n, cls(1, 1), &t).unwrap().value, total);
        }
    }

    #[test]
    fn table_too_short_detected() {
        let t = PartitionTable::up_to(5);
        assert!(matches!(
            parts_count_exact(6, cls(1, 3), &t),
            Err(Error::TableTooShort { .. })
        ));
        assert!(total_parts(6, &t).is_err());
    }

    #[test]
    fn partition_generation_order_and_count() {
        let mut seen = Vec::new();
        for_each_partition(5, |p| seen.push(p.to_vec()));
        assert_eq!(seen.len(), 7);
        assert_eq!(seen[0], vec![5]);
        assert_eq!(seen.last().unwrap(), &vec![1, 1, 1, 1, 1]);
        for p in &seen {
            assert!(p.windows(2).all(|w| w[0] >= w[1]), "non-increasing parts");
            assert_eq!(p.iter().sum::<u64>(), 5);
        }
        let mut count0 = 0;
        for_each_partition(0, |p| {
            assert!(p.is_empty());
            count0 += 1;
        });
        assert_eq!(count0, 1, "the empty partition of 0");
    }
}
