//! Input generation shared by the criterion benches.

use fftmul_core::bigint::Natural;
use fftmul_core::rng::SplitMix64;

/// Deterministic operand of exactly `bits` bits — the top bit is forced so a
/// benchmark labeled 4096 really multiplies 4096-bit numbers.
pub fn operand(bits: usize, seed: u64) -> Natural {
    assert!(bits >= 1);
    let mut rng = SplitMix64::new(seed);
    let words = bits.div_ceil(64);
    let mut limbs: Vec<u64> = (0..words).map(|_| rng.next_u64()).collect();
    let top = (bits - 1) % 64;
    let mask = if top == 63 { u64::MAX } else { (1u64 << (top + 1)) - 1 };
    limbs[words - 1] = (limbs[words - 1] & mask) | (1u64 << top);
    Natural::from_limbs(&limbs)
}
