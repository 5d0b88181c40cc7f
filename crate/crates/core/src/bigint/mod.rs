//! Arbitrary-precision unsigned and signed integers on 64-bit limbs.
//!
//! `Natural` is the workhorse: little-endian limb vector, canonical form
//! (no trailing zero limbs), with schoolbook multiplication kept as an
//! independent oracle next to the Karatsuba production path. `SignedInt`
//! wraps a sign and a magnitude for the signed chunk arithmetic the
//! bivariate stage needs.

mod natural;
mod signed;

pub use natural::Natural;
pub use signed::SignedInt;

/// Limbs below which Karatsuba recursion falls back to schoolbook.
pub const DEFAULT_KARATSUBA_CUTOFF: usize = 32;
