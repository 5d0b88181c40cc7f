//! The recursive long-DFT procedure and its parameter policies.
//!
//! A length-L transform over F_p is decomposed into layers of length-S
//! transforms (Cooley–Tukey), each short transform becomes a cyclic
//! convolution (chirp weighting), each convolution becomes a bivariate
//! product over chunked integers, and that product is computed modulo a much
//! smaller prime p' — where the same procedure applies again. Profiles
//! control how parameters are derived: the strict mode follows the
//! asymptotic formulas and therefore rejects every machine-scale input,
//! while the test-scale mode keeps all algebraic preconditions (divisibility,
//! root existence, lift range) but picks small workable values.

use crate::bivariate::{self, ChunkParams};
use crate::bluestein::ChirpPair;
use crate::dft::{self, CtPlan, PolyModXL};
use crate::error::{Error, Result};
use crate::fp::{root_of_unity, FieldElement};
use crate::opcount;
use crate::primes::{self, find_p0, FftPrime};

/// Transform sizes of the shape m = k·(lg k)³.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AdmissibleSize {
    k: usize,
    chunk_bits: usize,
    total_bits: usize,
}

impl AdmissibleSize {
    /// r = (lg k)³, m = k·r, lg taken as ceiling log₂.
    pub fn from_k(k: usize) -> Self {
        assert!(k >= 2, "admissible sizes start at k = 2");
        let r = primes::lg(k as u64).pow(3) as usize;
        AdmissibleSize {
            k,
            chunk_bits: r,
            total_bits: k * r,
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn chunk_bits(&self) -> usize {
        self.chunk_bits
    }

    pub fn total_bits(&self) -> usize {
        self.total_bits
    }
}

/// Recursion sizing under the strict rules: the auxiliary prime must exceed
/// 2^bound_bits, and its exponent comes from the same admissible-size shape.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RecursionShape {
    pub bound_bits: usize,
    pub aux_k: usize,
    pub aux_bits: usize,
}

/// bound_bits = 2·(lg m)³; aux_k = ⌈bound_bits / (lg β − 3·lg lg β)³⌉;
/// aux_bits = aux_k·(lg aux_k)³. Fails when the denominator is not positive,
/// which is the case for every m small enough to fit on real hardware.
pub fn recursion_shape(total_bits: usize) -> Result<RecursionShape> {
    let lg_m = primes::lg(total_bits as u64);
    let beta = 2 * lg_m.pow(3) as usize;
    let lg_beta = primes::lg(beta as u64);
    let lg_lg_beta = primes::lg(lg_beta.into());
    if lg_beta < 3 * lg_lg_beta + 1 {
        return Err(Error::ParameterInfeasible(format!(
            "lg β − 3·lg lg β = {} − {} < 1 at m = {total_bits}",
            lg_beta,
            3 * lg_lg_beta
        )));
    }
    let denom = (lg_beta - 3 * lg_lg_beta).pow(3) as usize;
    let aux_k = beta.div_ceil(denom);
    let aux = AdmissibleSize::from_k(aux_k);
    debug_assert!(beta <= aux.total_bits());
    Ok(RecursionShape {
        bound_bits: beta,
        aux_k,
        aux_bits: aux.total_bits(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProfileMode {
    /// The asymptotic parameter rules, enforced literally. Rejects every
    /// input a physical machine can hold; exists to prove the rules are
    /// implemented, not to run.
    Strict,
    /// Small explicit parameters preserving the algebraic preconditions.
    TestScale,
}

/// How a transform run derives its parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Profile {
    pub mode: ProfileMode,
    /// Base case whenever the prime's exponent m is at or below this.
    pub base_case_threshold: usize,
    /// Recursion depth budget; None = unbounded (strict mode only — the
    /// test-scale auxiliary primes grow with depth instead of shrinking).
    pub max_depth: Option<u32>,
    /// Explicit short length S instead of the mode's default.
    pub short_len_override: Option<usize>,
    /// Explicit chunk count k instead of the mode's default.
    pub chunk_count_override: Option<usize>,
    /// Explicit auxiliary prime (exponent, multiplier) instead of the scan.
    pub aux_prime_override: Option<(usize, u64)>,
}

impl Profile {
    /// Never recurse: every call lands in the radix-2 base case.
    pub fn base_case_only() -> Self {
        Profile {
            mode: ProfileMode::TestScale,
            base_case_threshold: 0,
            max_depth: Some(0),
            short_len_override: None,
            chunk_count_override: None,
            aux_prime_override: None,
        }
    }

    /// Recurse through the five-step reduction `depth` times, then base.
    pub fn test_scale(depth: u32) -> Self {
        Profile {
            max_depth: Some(depth),
            ..Profile::base_case_only()
        }
    }

    /// The literal asymptotic rules, base-cased below m = 2^17.
    pub fn strict() -> Self {
        Profile {
            mode: ProfileMode::Strict,
            base_case_threshold: 1 << 17,
            max_depth: None,
            short_len_override: None,
            chunk_count_override: None,
            aux_prime_override: None,
        }
    }

    pub fn with_short_len(mut self, s: usize) -> Self {
        self.short_len_override = Some(s);
        self
    }

    pub fn with_chunk_count(mut self, k: usize) -> Self {
        self.chunk_count_override = Some(k);
        self
    }

    pub fn with_aux_prime(mut self, exponent: usize, multiplier: u64) -> Self {
        self.aux_prime_override = Some((exponent, multiplier));
        self
    }

    /// Line-based key=value form, inverse of `parse`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(match self.mode {
            ProfileMode::Strict => "mode = strict\n",
            ProfileMode::TestScale => "mode = test_scale\n",
        });
        out.push_str(&format!("base_case_threshold = {}\n", self.base_case_threshold));
        if let Some(d) = self.max_depth {
            out.push_str(&format!("max_depth = {d}\n"));
        }
        if let Some(s) = self.short_len_override {
            out.push_str(&format!("short_len = {s}\n"));
        }
        if let Some(k) = self.chunk_count_override {
            out.push_str(&format!("chunk_count = {k}\n"));
        }
        if let Some((m, a)) = self.aux_prime_override {
            out.push_str(&format!("aux_prime = {m},{a}\n"));
        }
        out
    }

    /// Parses the key=value form. Unknown keys are rejected; `mode` is
    /// required; everything else defaults as in the named constructors.
    pub fn parse(text: &str) -> Result<Self> {
        let mut mode = None;
        let mut profile = Profile::base_case_only();
        let mut saw_depth = false;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::ProfileParse(format!("line {}: expected key = value", lineno + 1))
            })?;
            let (key, value) = (key.trim(), value.trim());
            let bad = |what: &str| {
                Error::ProfileParse(format!("line {}: bad {what}: {value:?}", lineno + 1))
            };
            match key {
                "mode" => {
                    mode = Some(match value {
                        "strict" => ProfileMode::Strict,
                        "test_scale" => ProfileMode::TestScale,
                        _ => return Err(bad("mode")),
                    })
                }
                "base_case_threshold" => {
                    profile.base_case_threshold = value.parse().map_err(|_| bad("threshold"))?
                }
                "max_depth" => {
                    profile.max_depth = Some(value.parse().map_err(|_| bad("depth"))?);
                    saw_depth = true;
                }
                "short_len" => {
                    profile.short_len_override = Some(value.parse().map_err(|_| bad("length"))?)
                }
                "chunk_count" => {
                    profile.chunk_count_override = Some(value.parse().map_err(|_| bad("count"))?)
                }
                "aux_prime" => {
                    let (m, a) = value
                        .split_once(',')
                        .ok_or_else(|| bad("aux prime (want m,a)"))?;
                    profile.aux_prime_override = Some((
                        m.trim().parse().map_err(|_| bad("aux exponent"))?,
                        a.trim().parse().map_err(|_| bad("aux multiplier"))?,
                    ));
                }
                _ => {
                    return Err(Error::ProfileParse(format!(
                        "line {}: unknown key {key:?}",
                        lineno + 1
                    )))
                }
            }
        }
        let mode = mode.ok_or_else(|| Error::ProfileParse("missing mode".into()))?;
        profile.mode = mode;
        match mode {
            ProfileMode::Strict => {
                if !saw_depth {
                    profile.max_depth = None;
                }
                if profile.base_case_threshold == 0 {
                    profile.base_case_threshold = 1 << 17;
                }
            }
            ProfileMode::TestScale => {
                if !saw_depth {
                    profile.max_depth = Some(1);
                }
            }
        }
        Ok(profile)
    }
}

/// Counter snapshot for the current thread; see `reset_op_counters`.
pub fn op_counters() -> opcount::Snapshot {
    opcount::snapshot()
}

pub fn reset_op_counters() {
    opcount::reset()
}

/// Long transform with recursive parameter derivation. Output equals
/// `dft_naive(f, zeta)` for every profile that accepts the input.
pub fn transform<'p>(
    f: &PolyModXL<'p>,
    zeta: &FieldElement<'p>,
    profile: &Profile,
) -> Result<PolyModXL<'p>> {
    transform_depth(f, zeta, profile, 0)
}

/// Inverse of `transform`: run it against ζ⁻¹ and divide by L.
pub fn inverse_transform<'p>(
    fhat: &PolyModXL<'p>,
    zeta: &FieldElement<'p>,
    profile: &Profile,
) -> Result<PolyModXL<'p>> {
    let unscaled = transform_depth(fhat, &zeta.inv(), profile, 0)?;
    let scale = FieldElement::from_u64(zeta.context(), fhat.len() as u64).inv();
    PolyModXL::new(unscaled.coeffs().iter().map(|c| c.mul(&scale)).collect())
}

fn transform_depth<'p>(
    f: &PolyModXL<'p>,
    zeta: &FieldElement<'p>,
    profile: &Profile,
    depth: u32,
) -> Result<PolyModXL<'p>> {
    let l = f.len();
    let p = zeta.context();
    let m = p.exponent();

    let depth_allows = match profile.max_depth {
        Some(limit) => depth < limit,
        None => true,
    };
    if !depth_allows || m <= profile.base_case_threshold || l == 1 {
        opcount::count_base_case();
        return dft::dft_radix2(f, zeta);
    }
    opcount::count_recursion();

    // (i) choose the short length S and lay out the long-to-short plan.
    let s = match profile.short_len_override {
        Some(s) => s,
        None => default_short_len(l, m, profile.mode)?,
    };
    if profile.mode == ProfileMode::Strict {
        let lg_m = primes::lg(m as u64) as usize;
        let lg_l = l.trailing_zeros() as usize;
        if lg_l <= lg_m.pow(4) || lg_l >= m {
            return Err(Error::ParameterInfeasible(format!(
                "strict mode needs (lg m)⁴ < lg L < m; got lg L = {lg_l}, (lg m)⁴ = {}, m = {m}",
                lg_m.pow(4)
            )));
        }
    }
    let plan = CtPlan::new(zeta.clone(), l, s)?;
    opcount::count_layers((plan.short_layers() + plan.radix2_layers()) as u64);

    // (ii) chirp weights turning each short DFT into a cyclic convolution.
    let chirp = ChirpPair::derive(zeta, l, s)?;

    // (iii) chunking of F_p values into k pieces of m/k bits.
    let k = match profile.chunk_count_override {
        Some(k) => k,
        None => default_chunk_count(m, profile.mode)?,
    };
    let params = ChunkParams::new(p, s, k)?;
    let bound = params.coefficient_bound();

    // (iv) auxiliary prime p' large enough to lift products unambiguously,
    // with enough 2-adic room for an order-S root.
    let aux = match profile.aux_prime_override {
        Some((m_aux, a_aux)) => FftPrime::new(m_aux, a_aux)?,
        None => find_aux_prime(s, &bound, profile.mode, m)?,
    };
    let zeta_aux = root_of_unity(&aux, s as u64)?;
    let y_mult = FieldElement::from_u64(&aux, params.multiplier());

    // (v) short engine: chirp-weight, then compute the cyclic convolution as
    // a chunked bivariate product over p', transforming columns with this
    // same procedure one level deeper.
    let convolver = |a: PolyModXL<'p>, b: PolyModXL<'p>| -> Result<PolyModXL<'p>> {
        let u = bivariate::embed(&bivariate::split(&a, &params), &aux);
        let v = bivariate::embed(&bivariate::split(&b, &params), &aux);
        let fwd = |col| {
            let col: PolyModXL = col;
            transform_depth(&col, &zeta_aux, profile, depth + 1)
        };
        let inv = |col| {
            let col: PolyModXL = col;
            let unscaled = transform_depth(&col, &zeta_aux.inv(), profile, depth + 1)?;
            let scale = FieldElement::from_u64(&aux, s as u64).inv();
            PolyModXL::new(unscaled.coeffs().iter().map(|c| c.mul(&scale)).collect())
        };
        let w = bivariate::mul_bivariate_mod_prime(&u, &v, &y_mult, &fwd, &inv)?;
        let h = bivariate::lift(&w, &bound)?;
        Ok(bivariate::recombine(&h, &params, p))
    };
    let engine = |a: PolyModXL<'p>, omega: FieldElement<'p>| -> Result<PolyModXL<'p>> {
        debug_assert!(&omega == plan.short_root());
        crate::bluestein::short_dft_via_convolution(&a, &chirp, &convolver)
    };
    dft::dft_cooley_tukey(f, &plan, &engine)
}

/// Test scale: S = 2^(2·lg lg L) capped into [2, L]. Strict: S = 2^((lg m)²),
/// which overflows any machine-sized L and is rejected upstream by the
/// lg L > (lg m)⁴ precondition before it can be used.
fn default_short_len(l: usize, m: usize, mode: ProfileMode) -> Result<usize> {
    match mode {
        ProfileMode::TestScale => {
            if l <= 2 {
                return Ok(l);
            }
            let lg_l = l.trailing_zeros() as u64;
            let s_exp = (2 * primes::lg(lg_l)).min(lg_l as u32) as usize;
            Ok((1usize << s_exp).max(2))
        }
        ProfileMode::Strict => {
            let exp = (primes::lg(m as u64) as usize).pow(2);
            if exp >= usize::BITS as usize {
                return Err(Error::ParameterInfeasible(format!(
                    "strict short length 2^((lg m)²) = 2^{exp} is unrepresentable"
                )));
            }
            Ok(1usize << exp)
        }
    }
}

/// Test scale: the smallest prime factor of m. Strict: the k for which
/// m = k·(lg k)³, which must exist for an admissible m.
fn default_chunk_count(m: usize, mode: ProfileMode) -> Result<usize> {
    match mode {
        ProfileMode::TestScale => {
            let mut d = 2;
            while d * d <= m {
                if m % d == 0 {
                    return Ok(d);
                }
                d += 1;
            }
            Ok(m.max(1))
        }
        ProfileMode::Strict => {
            for k in 2..=m {
                let cand = AdmissibleSize::from_k(k);
                if cand.total_bits() == m {
                    return Ok(k);
                }
                if cand.total_bits() > m {
                    break;
                }
            }
            Err(Error::ParameterInfeasible(format!(
                "{m} is not of the admissible form k·(lg k)³"
            )))
        }
    }
}

/// Smallest-exponent auxiliary prime whose minimal representative clears the
/// lift range: scan m' upward from max(lg S, 2) and accept the first p₀(m')
/// with p₀(m') > 2·bound. The exponent also guarantees an order-S root.
fn find_aux_prime(
    s: usize,
    bound: &crate::bigint::Natural,
    mode: ProfileMode,
    ambient_m: usize,
) -> Result<FftPrime> {
    let two_bound = bound.shl(1);
    if mode == ProfileMode::Strict {
        // Strict sizing: p' must exceed 2^β where β = 2(lg m)³; the exponent
        // comes from the admissible recursion shape.
        let shape = recursion_shape(ambient_m)?;
        let aux = find_p0(shape.aux_bits, 1_000_000)?;
        if *aux.modulus() <= two_bound {
            return Err(Error::ParameterInfeasible(
                "strict auxiliary prime does not clear the lift range".into(),
            ));
        }
        return Ok(aux);
    }
    let lg_s = if s <= 1 { 0 } else { s.trailing_zeros() as usize };
    for m_aux in lg_s.max(2)..=512 {
        if let Ok(cand) = find_p0(m_aux, 200_000) {
            if *cand.modulus() > two_bound {
                return Ok(cand);
            }
        }
    }
    Err(Error::ParameterInfeasible(format!(
        "no auxiliary prime up to exponent 512 clears bound of {} bits",
        bound.bit_length()
    )))
}
