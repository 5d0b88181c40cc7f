//! Integer multiplication by chunked cyclic convolution over an FFT prime.
//!
//! An n-bit operand is cut into d chunks of b bits, the chunk sequences are
//! cyclically convolved over F_p with a transform of length L ≥ 2d, and the
//! product is reassembled by an overlap-add carry pass. Since every
//! convolution coefficient is below 2^(2b)·d < p, residues lift to the true
//! integer coefficients directly and the reassembly is exact.

use std::cell::RefCell;
use std::collections::HashMap;

use crate::bigint::Natural;
use crate::dft::{self, PolyModXL};
use crate::error::{Error, Result};
use crate::fp::{root_of_unity, FieldElement};
use crate::primes::{self, find_p0, FftPrime};
use crate::transform::{self, AdmissibleSize, Profile};

/// Below this many bits `multiply` skips the transform entirely.
pub const FFT_THRESHOLD_BITS: usize = 1 << 15;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlanMode {
    /// The asymptotic sizing rules, enforced literally; infeasible for all
    /// inputs small enough to exist.
    Strict,
    /// The same plan shape with the prime exponent chosen as the smallest
    /// admissible size clearing the carry headroom.
    Practical,
}

/// How the length-L convolution is evaluated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MulEngine {
    /// Iterative radix-2 transform on the machine-word kernel. The default.
    Direct,
    /// The full recursive transform machinery under the given profile.
    /// Exists to show the pipeline end to end; agrees with `Direct`.
    Recursive(Profile),
}

/// Sizing for one multiplication: prime, chunk geometry, transform length.
#[derive(Clone, Debug)]
pub struct MulPlan {
    input_bits: usize,
    size_index: usize,
    prime_exponent: usize,
    chunk_bits: usize,
    chunk_count: usize,
    transform_len: usize,
    prime: FftPrime,
}

impl MulPlan {
    /// n: operands may have at most this many bits.
    pub fn input_bits(&self) -> usize {
        self.input_bits
    }

    /// k with m = k·(lg k)³.
    pub fn size_index(&self) -> usize {
        self.size_index
    }

    /// m: the prime is p₀(m).
    pub fn prime_exponent(&self) -> usize {
        self.prime_exponent
    }

    /// b = ⌊m/4⌋ bits per chunk.
    pub fn chunk_bits(&self) -> usize {
        self.chunk_bits
    }

    /// d = ⌈n/b⌉ chunks per operand.
    pub fn chunk_count(&self) -> usize {
        self.chunk_count
    }

    /// L: power of two, at least 2d, and 2^(lg(10n/m)) when that is larger.
    pub fn transform_len(&self) -> usize {
        self.transform_len
    }

    pub fn prime(&self) -> &FftPrime {
        &self.prime
    }

    /// ζ of order L in F_p.
    pub fn root(&self) -> Result<FieldElement<'_>> {
        root_of_unity(&self.prime, self.transform_len as u64)
    }
}

thread_local! {
    // p₀(m) is re-derived for every plan; memoize per exponent.
    static PRIME_CACHE: RefCell<HashMap<usize, FftPrime>> = RefCell::new(HashMap::new());
}

fn prime_for_exponent(m: usize) -> Result<FftPrime> {
    PRIME_CACHE.with(|cache| {
        if let Some(p) = cache.borrow().get(&m) {
            return Ok(p.clone());
        }
        let p = find_p0(m, 1_000_000)?;
        cache.borrow_mut().insert(m, p.clone());
        Ok(p)
    })
}

/// Derives the plan for n-bit operands.
///
/// Strict mode follows the sizing k = ⌈(5/2)·lg n / (lg lg n)³⌉ and demands
/// 2·lg n < m < 3·lg n, d·m < 5n, and 10n ≤ L·m — unsatisfiable until lg n
/// is itself astronomically large, so every call at realistic n reports
/// which inequality broke. Practical mode keeps the plan shape but picks m
/// as the smallest admissible size exceeding 2·lg n + 64.
pub fn make_plan(n: usize, mode: PlanMode) -> Result<MulPlan> {
    if n < 2 {
        return Err(Error::ParameterInfeasible(format!(
            "plans need n ≥ 2 bits, got {n}"
        )));
    }
    let lg_n = primes::lg(n as u64) as usize;
    let (size_index, m) = match mode {
        PlanMode::Strict => {
            let lg_lg_n = primes::lg(lg_n as u64) as usize;
            if lg_lg_n == 0 {
                return Err(Error::ParameterInfeasible(format!(
                    "strict sizing needs lg lg n ≥ 1, got n = {n}"
                )));
            }
            let k = (5 * lg_n).div_ceil(2 * lg_lg_n.pow(3));
            let m = if k >= 2 {
                AdmissibleSize::from_k(k).total_bits()
            } else {
                0 // lg 1 = 0, so k = 1 yields m = 0
            };
            if m <= 2 * lg_n {
                return Err(Error::ParameterInfeasible(format!(
                    "strict sizing violates 2·lg n < m: m = {m}, lg n = {lg_n}"
                )));
            }
            if m >= 3 * lg_n {
                return Err(Error::ParameterInfeasible(format!(
                    "strict sizing violates m < 3·lg n: m = {m}, lg n = {lg_n}"
                )));
            }
            (k, m)
        }
        PlanMode::Practical => {
            let mut k = 2;
            loop {
                let cand = AdmissibleSize::from_k(k);
                if cand.total_bits() > 2 * lg_n + 64 {
                    break (k, cand.total_bits());
                }
                k += 1;
            }
        }
    };

    let prime = prime_for_exponent(m)?;
    let b = m / 4;
    let d = n.div_ceil(b);
    let ell = primes::lg(((10 * n) / m).max(1) as u64);
    let mut l = 1usize << ell;
    if l < 2 * d {
        l = (2 * d).next_power_of_two();
    }

    if mode == PlanMode::Strict {
        if d * m >= 5 * n {
            return Err(Error::ParameterInfeasible(format!(
                "strict sizing violates d < 5n/m: d = {d}, n = {n}, m = {m}"
            )));
        }
        if 10 * n > l * m {
            return Err(Error::ParameterInfeasible(format!(
                "strict sizing violates 5n/m ≤ L/2: n = {n}, m = {m}, L = {l}"
            )));
        }
    }
    if 2 * d > l {
        return Err(Error::ParameterInfeasible(format!(
            "chunk count {d} exceeds L/2 = {}",
            l / 2
        )));
    }
    if 2 * b + primes::lg(d as u64) as usize >= m {
        return Err(Error::ParameterInfeasible(format!(
            "coefficients may overflow the prime: 2b + lg d = {} ≥ m = {m}",
            2 * b + primes::lg(d as u64) as usize
        )));
    }

    Ok(MulPlan {
        input_bits: n,
        size_index,
        prime_exponent: m,
        chunk_bits: b,
        chunk_count: d,
        transform_len: l,
        prime,
    })
}

/// Product of two naturals. Small operands go to Karatsuba; past
/// `FFT_THRESHOLD_BITS` the transform pipeline takes over.
pub fn multiply(u: &Natural, v: &Natural) -> Natural {
    if u.is_zero() || v.is_zero() {
        return Natural::zero();
    }
    let n = u.bit_length().max(v.bit_length());
    if n < FFT_THRESHOLD_BITS {
        return u.mul_karatsuba(v);
    }
    let plan = make_plan(n, PlanMode::Practical).expect("practical plan exists for n ≥ 2");
    multiply_with_plan(u, v, &plan, &MulEngine::Direct)
        .expect("in-range multiply cannot fail")
}

/// Product via an explicit plan and engine; operands must fit the plan.
pub fn multiply_with_plan(
    u: &Natural,
    v: &Natural,
    plan: &MulPlan,
    engine: &MulEngine,
) -> Result<Natural> {
    if u.bit_length() > plan.input_bits || v.bit_length() > plan.input_bits {
        return Err(Error::PlanInvalid(format!(
            "operand of {} bits exceeds the plan's {} bits",
            u.bit_length().max(v.bit_length()),
            plan.input_bits
        )));
    }
    if u.is_zero() || v.is_zero() {
        return Ok(Natural::zero());
    }
    let cu = chunks_of(u, plan.chunk_bits, plan.chunk_count);
    let cv = chunks_of(v, plan.chunk_bits, plan.chunk_count);
    let coeffs = match engine {
        MulEngine::Direct if plan.prime.modulus().limbs().len() <= 4 => {
            let root = plan.root()?;
            dft::convolve_chunks(
                &plan.prime,
                root.value(),
                &cu,
                &cv,
                plan.transform_len,
            )
        }
        MulEngine::Direct => {
            // No machine-word kernel at this width; the base-case-only field
            // path computes the same radix-2 transform.
            convolve_in_field(plan, &cu, &cv, &Profile::base_case_only())?
        }
        MulEngine::Recursive(profile) => convolve_in_field(plan, &cu, &cv, profile)?,
    };
    debug_assert!(
        coeffs[2 * plan.chunk_count - 1..].iter().all(Natural::is_zero),
        "cyclic wraparound clipped a linear-convolution term"
    );
    Ok(recover_product(&coeffs, plan.chunk_bits))
}

fn convolve_in_field(
    plan: &MulPlan,
    cu: &[u64],
    cv: &[u64],
    profile: &Profile,
) -> Result<Vec<Natural>> {
    let root = plan.root()?;
    let l = plan.transform_len;
    let pad = |chunks: &[u64]| -> Result<PolyModXL<'_>> {
        let mut vals = chunks.to_vec();
        vals.resize(l, 0);
        PolyModXL::from_u64s(&plan.prime, &vals)
    };
    let fu = transform::transform(&pad(cu)?, &root, profile)?;
    let fv = transform::transform(&pad(cv)?, &root, profile)?;
    let w = transform::inverse_transform(&dft::pointwise_product(&fu, &fv)?, &root, profile)?;
    Ok(w.coeffs().iter().map(|c| c.value().clone()).collect())
}

/// The b-bit windows of x, least significant first, exactly `count` of them.
fn chunks_of(x: &Natural, chunk_bits: usize, count: usize) -> Vec<u64> {
    assert!((1..=64).contains(&chunk_bits), "chunks must be word-sized");
    let limbs = x.limbs();
    let mask = if chunk_bits == 64 {
        u64::MAX
    } else {
        (1u64 << chunk_bits) - 1
    };
    (0..count)
        .map(|i| {
            let bit = i * chunk_bits;
            let (word, sh) = (bit / 64, bit % 64);
            let lo = limbs.get(word).copied().unwrap_or(0) >> sh;
            let hi = if sh == 0 {
                0
            } else {
                limbs.get(word + 1).copied().unwrap_or(0) << (64 - sh)
            };
            (lo | hi) & mask
        })
        .collect()
}

/// Overlap-add: Σ coeffs[i]·2^(i·b), carries resolved in one limb pass.
pub fn recover_product(coeffs: &[Natural], chunk_bits: usize) -> Natural {
    assert!(chunk_bits >= 1);
    if coeffs.is_empty() {
        return Natural::zero();
    }
    let top = coeffs
        .iter()
        .map(Natural::bit_length)
        .max()
        .unwrap_or(0);
    let total = chunk_bits * (coeffs.len() - 1) + top;
    let mut buf = vec![0u64; total.div_ceil(64) + 2];
    for (i, c) in coeffs.iter().enumerate() {
        add_shifted(&mut buf, c.limbs(), i * chunk_bits);
    }
    Natural::from_limbs(&buf)
}

/// buf += limbs << bit_offset, rippling the carry as far as it goes.
fn add_shifted(buf: &mut [u64], limbs: &[u64], bit_offset: usize) {
    if limbs.is_empty() {
        return;
    }
    let (word, sh) = (bit_offset / 64, bit_offset % 64);
    let mut carry = false;
    for j in 0..=limbs.len() {
        let lo = if j < limbs.len() { limbs[j] << sh } else { 0 };
        let hi = if sh > 0 && j > 0 {
            limbs[j - 1] >> (64 - sh)
        } else {
            0
        };
        let (s1, c1) = buf[word + j].overflowing_add(lo | hi);
        let (s2, c2) = s1.overflowing_add(carry as u64);
        buf[word + j] = s2;
        carry = c1 || c2;
    }
    let mut idx = word + limbs.len() + 1;
    while carry {
        let (s, c) = buf[idx].overflowing_add(1);
        buf[idx] = s;
        carry = c;
        idx += 1;
    }
}
