//! Arbitrary-precision integer multiplication built on number-theoretic
//! transforms over primes of the form p = a·2^m + 1, together with the
//! number-theoretic tooling such primes require: primality testing, searches
//! for the least multiplier a at a given exponent m, and least-prime-in-
//! arithmetic-progression scans.
//!
//! The multiplication pipeline reduces a long DFT over F_p to short DFTs
//! (Cooley–Tukey), turns each short DFT into a cyclic convolution
//! (Bluestein's substitution), rewrites that convolution as a bivariate
//! product over Z[X,Y]/(X^S−1, Y^k+a) by splitting coefficients into k
//! chunks of r bits, and evaluates the bivariate product modulo a second,
//! smaller prime p' of the same form. Every stage has an independent naive
//! oracle and the recursive path is exercised against it at test scale.

pub mod bigint;
pub mod bivariate;
pub mod bluestein;
pub mod dft;
pub mod error;
pub mod fp;
pub mod opcount;
pub mod primes;
pub mod intmul;
pub mod rng;
pub mod selftest;
pub mod transform;

pub use bigint::{Natural, SignedInt};
pub use error::Error;
pub use fp::FieldElement;
pub use primes::FftPrime;
