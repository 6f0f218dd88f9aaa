//! Exact and asymptotic statistics for the parts of integer partitions that
//! lie in a fixed residue class r (mod N).
//!
//! The central quantity is the total number of parts congruent to r (mod N)
//! over all partitions of n. This crate computes it three ways:
//!
//! - exactly, by a divisor-class convolution against the partition numbers
//!   p(n) ([`partitions`]);
//! - asymptotically, from a digamma main term and from a two-term difference
//!   approximation driven by odd Dirichlet characters and their L-values at
//!   s = 0 ([`asymptotics`], [`dirichlet`]);
//! - by direct enumeration of partitions, as an independent oracle for
//!   small n ([`partitions::parts_count_enumerate`]).
//!
//! Supporting machinery: exact Bernoulli arithmetic and digamma at rational
//! arguments ([`specfun`]), Euler-Maclaurin tail expansions with numeric
//! order checks ([`eulermac`]), a sign + log-magnitude representation for
//! quantities of size exp(pi sqrt(2n/3)) ([`LogValue`]), and the validation
//! suites behind the CLI's `check` subcommand ([`checks`]).

pub mod asymptotics;
pub mod checks;
mod dd;
pub mod dirichlet;
mod error;
pub mod eulermac;
mod logvalue;
pub mod partitions;
pub mod specfun;

pub use error::{Error, Result};
pub use logvalue::LogValue;
pub use partitions::{PartCount, PartitionTable, ResidueClass};

// Re-exported so downstream crates name the arbitrary-precision types
// without depending on the num crates directly.
pub use num_bigint::{BigInt, BigUint};
pub use num_complex::Complex64;
pub use num_rational::BigRational;
