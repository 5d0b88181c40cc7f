use std::fmt;

/// Failure modes surfaced by the library.
///
/// Precondition violations that indicate caller bugs (subtracting a larger
/// Natural from a smaller one, dividing by zero, mixing field contexts) are
/// panics, not variants here; this enum covers conditions that depend on
/// runtime data or configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Hex parsing failed; payload describes the offending input.
    InvalidHex(String),
    /// No a ≤ a_max makes a·2^m + 1 prime.
    PrimeNotFound { exponent: usize, a_max: u64 },
    /// A modulus offered as an FftPrime failed the primality test.
    NotPrime { exponent: usize, a: u64 },
    /// gcd(r, q) ≠ 1, so the progression r mod q contains at most one prime.
    InvalidResidue { residue: u64, modulus: u64 },
    /// Requested root order 2^e exceeds the 2-power part of p − 1.
    RootUnavailable { order: u64, exponent: usize },
    /// A transform plan or its profile is internally inconsistent.
    PlanInvalid(String),
    /// Balanced lift from F_{p'} would be ambiguous: p' ≤ 2·(coefficient bound).
    LiftAmbiguous { bound_bits: usize, prime_bits: usize },
    /// Requested parameter regime has no solution (e.g. the strict-mode
    /// inequalities at desk-scale input sizes).
    ParameterInfeasible(String),
    /// Key=value profile text failed to parse.
    ProfileParse(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidHex(s) => write!(f, "invalid hex input: {s}"),
            Error::PrimeNotFound { exponent, a_max } => {
                write!(f, "no prime a*2^{exponent}+1 with a <= {a_max}")
            }
            Error::NotPrime { exponent, a } => {
                write!(f, "{a}*2^{exponent}+1 is not prime")
            }
            Error::InvalidResidue { residue, modulus } => {
                write!(f, "residue {residue} is not coprime to {modulus}")
            }
            Error::RootUnavailable { order, exponent } => {
                write!(f, "no root of unity of order {order}: 2-power part of p-1 is 2^{exponent}")
            }
            Error::PlanInvalid(s) => write!(f, "invalid transform plan: {s}"),
            Error::LiftAmbiguous { bound_bits, prime_bits } => write!(
                f,
                "lift is ambiguous: coefficient bound needs {bound_bits} bits but p' has only {prime_bits}"
            ),
            Error::ParameterInfeasible(s) => write!(f, "parameters infeasible: {s}"),
            Error::ProfileParse(s) => write!(f, "bad profile: {s}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
