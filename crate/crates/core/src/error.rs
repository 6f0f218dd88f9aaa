use std::fmt;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors for precondition violations across the crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Residue outside 0..=modulus, or modulus zero.
    InvalidResidue { residue: u64, modulus: u64 },
    /// A partition table does not extend far enough for the query.
    TableTooShort { needed: usize, max_n: usize },
    /// Enumeration oracle refused an n past its guard.
    EnumerationTooLarge { n: u64, limit: u64 },
    /// gcd(r, N) = 1 required.
    NotCoprime { residue: u64, modulus: u64 },
    /// The difference asymptotic requires N >= 3.
    ModulusTooSmall { modulus: u64 },
    /// L(0, psi) is only defined here for non-principal characters.
    PrincipalCharacter,
    /// Gamma evaluated at a non-positive integer.
    GammaPole { argument: f64 },
    /// An expansion was asked for more terms than it has coefficients.
    InsufficientCoefficients { needed: usize, available: usize },
    /// An argument required to be positive (or nonzero) was not.
    NonPositive { name: &'static str, value: f64 },
    /// An argument fell outside its documented interval.
    OutOfRange { name: &'static str, value: f64, interval: &'static str },
    /// A finite floating-point input was required.
    NonFinite { name: &'static str },
    /// Ratio against a main term whose sign is not positive.
    NonPositiveMainTerm,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::InvalidResidue { residue, modulus } => {
                write!(f, "residue {residue} invalid for modulus {modulus}")
            }
            Self::TableTooShort { needed, max_n } => {
                write!(f, "partition table reaches {max_n}, query needs {needed}")
            }
            Self::EnumerationTooLarge { n, limit } => {
                write!(f, "enumeration oracle limited to n <= {limit}, got {n}")
            }
            Self::NotCoprime { residue, modulus } => {
                write!(f, "gcd({residue}, {modulus}) != 1")
            }
            Self::ModulusTooSmall { modulus } => {
                write!(f, "modulus {modulus} below the required minimum of 3")
            }
            Self::PrincipalCharacter => {
                write!(f, "operation not defined for the principal character")
            }
            Self::GammaPole { argument } => {
                write!(f, "gamma pole at non-positive integer {argument}")
            }
            Self::InsufficientCoefficients { needed, available } => {
                write!(f, "expansion needs {needed} coefficients, only {available} available")
            }
            Self::NonPositive { name, value } => {
                write!(f, "{name} must be positive, got {value}")
            }
            Self::OutOfRange { name, value, interval } => {
                write!(f, "{name} = {value} outside {interval}")
            }
            Self::NonFinite { name } => write!(f, "{name} must be finite"),
            Self::NonPositiveMainTerm => {
                write!(f, "main term is zero or negative; ratio undefined")
            }
        }
    }
}

impl std::error::Error for Error {}
