//! DFT engines over F_p.
//!
//! Three routes compute the same transform: `dft_naive` is the O(L²)
//! evaluation oracle, `dft_radix2` is the iterative power-of-two fast
//! transform, and `dft_cooley_tukey` decomposes a long transform into layers
//! of short ones around an injected short-DFT engine — the shape the
//! recursive multiplication pipeline needs. Cyclic convolutions come in a
//! naive and an NTT-backed form on the same pattern.

pub(crate) mod kernel;

use crate::bigint::Natural;
use crate::error::{Error, Result};
use crate::fp::FieldElement;

use kernel::Kernel;

/// A polynomial in F_p[X]/(X^L − 1): exactly L coefficients, L a power of two.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyModXL<'p> {
    coeffs: Vec<FieldElement<'p>>,
}

impl<'p> PolyModXL<'p> {
    pub fn new(coeffs: Vec<FieldElement<'p>>) -> Result<Self> {
        if coeffs.is_empty() || !coeffs.len().is_power_of_two() {
            return Err(Error::PlanInvalid(format!(
                "polynomial length {} is not a power of two",
                coeffs.len()
            )));
        }
        Ok(PolyModXL { coeffs })
    }

    /// Convenience constructor from word-sized coefficients.
    pub fn from_u64s(ctx: &'p crate::primes::FftPrime, values: &[u64]) -> Result<Self> {
        PolyModXL::new(values.iter().map(|&v| FieldElement::from_u64(ctx, v)).collect())
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        false // length ≥ 1 by construction
    }

    pub fn coeffs(&self) -> &[FieldElement<'p>] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<FieldElement<'p>> {
        self.coeffs
    }
}

/// Verifies ζ has exact multiplicative order `l` (a power of two).
pub(crate) fn check_root_order(l: usize, zeta: &FieldElement) -> Result<()> {
    if !l.is_power_of_two() {
        return Err(Error::PlanInvalid(format!("length {l} is not a power of two")));
    }
    if zeta.pow_u64(l as u64) != FieldElement::one(zeta.context()) {
        return Err(Error::PlanInvalid(format!("root does not satisfy ζ^{l} = 1")));
    }
    if l >= 2 && zeta.pow_u64(l as u64 / 2) == FieldElement::one(zeta.context()) {
        return Err(Error::PlanInvalid(format!("root order divides {l}/2, not exactly {l}")));
    }
    Ok(())
}

/// Direct evaluation at every power of ζ. The correctness oracle for every
/// other engine in this crate; kept free of any shared transform machinery.
pub fn dft_naive<'p>(f: &PolyModXL<'p>, zeta: &FieldElement<'p>) -> Result<PolyModXL<'p>> {
    check_root_order(f.len(), zeta)?;
    let one = FieldElement::one(zeta.context());
    let mut out = Vec::with_capacity(f.len());
    let mut point = one.clone(); // ζ^i
    for _ in 0..f.len() {
        let mut acc = FieldElement::zero(zeta.context());
        let mut power = one.clone(); // point^j
        for c in f.coeffs() {
            acc = acc.add(&c.mul(&power));
            power = power.mul(&point);
        }
        out.push(acc);
        point = point.mul(zeta);
    }
    PolyModXL::new(out)
}

/// Iterative radix-2 transform; output in natural index order, input left
/// untouched. Narrow moduli run on the flat word-level kernel.
pub fn dft_radix2<'p>(f: &PolyModXL<'p>, zeta: &FieldElement<'p>) -> Result<PolyModXL<'p>> {
    check_root_order(f.len(), zeta)?;
    Ok(radix2_dispatch(f, zeta))
}

/// Radix-2 without the order re-check, for callers that validated the plan.
fn radix2_dispatch<'p>(f: &PolyModXL<'p>, zeta: &FieldElement<'p>) -> PolyModXL<'p> {
    match zeta.context().modulus().limbs().len() {
        1 => radix2_via_kernel::<1>(f, zeta),
        2 => radix2_via_kernel::<2>(f, zeta),
        3 => radix2_via_kernel::<3>(f, zeta),
        4 => radix2_via_kernel::<4>(f, zeta),
        _ => radix2_generic(f, zeta),
    }
}

fn radix2_via_kernel<'p, const W: usize>(
    f: &PolyModXL<'p>,
    zeta: &FieldElement<'p>,
) -> PolyModXL<'p> {
    let ctx = zeta.context();
    let kern = Kernel::<W>::new(ctx.modulus());
    let mut data: Vec<[u64; W]> = f.coeffs().iter().map(|c| kern.to_mont(c.value())).collect();
    kern.forward(&mut data, &kern.to_mont(zeta.value()));
    let coeffs = data
        .iter()
        .map(|m| FieldElement::new(ctx, kern.from_mont(m)))
        .collect();
    PolyModXL { coeffs }
}

/// Reference radix-2 over field elements, any modulus width.
fn radix2_generic<'p>(f: &PolyModXL<'p>, zeta: &FieldElement<'p>) -> PolyModXL<'p> {
    let l = f.len();
    let mut data = f.coeffs().to_vec();
    bit_reverse_permute(&mut data);
    let mut len = 2;
    while len <= l {
        // Root of order `len`, then its powers as this level's twiddles.
        let w_len = zeta.pow_u64((l / len) as u64);
        let mut twiddles = Vec::with_capacity(len / 2);
        let mut w = FieldElement::one(zeta.context());
        for _ in 0..len / 2 {
            twiddles.push(w.clone());
            w = w.mul(&w_len);
        }
        for block in (0..l).step_by(len) {
            for j in 0..len / 2 {
                let hi = data[block + j + len / 2].mul(&twiddles[j]);
                let lo = data[block + j].clone();
                data[block + j] = lo.add(&hi);
                data[block + j + len / 2] = lo.sub(&hi);
            }
        }
        len <<= 1;
    }
    PolyModXL { coeffs: data }
}

fn bit_reverse_permute<T>(data: &mut [T]) {
    let l = data.len();
    let mut j = 0usize;
    for i in 1..l {
        let mut bit = l >> 1;
        while j & bit != 0 {
            j ^= bit;
            bit >>= 1;
        }
        j |= bit;
        if i < j {
            data.swap(i, j);
        }
    }
}

/// Transposes a rows×cols row-major matrix; (i, j) moves to (j, i).
pub fn transpose<T: Clone>(data: &[T], rows: usize, cols: usize) -> Vec<T> {
    assert_eq!(data.len(), rows * cols, "matrix shape mismatch");
    let mut out = Vec::with_capacity(data.len());
    for j in 0..cols {
        for i in 0..rows {
            out.push(data[i * cols + j].clone());
        }
    }
    out
}

/// Decomposition of a length-L transform into layers of length-S transforms:
/// L = S^(short_layers) · 2^(radix2_layers) with radix2_layers < lg S.
#[derive(Clone, Debug)]
pub struct CtPlan<'p> {
    long_len: usize,
    short_len: usize,
    short_layers: u32,
    radix2_layers: u32,
    long_root: FieldElement<'p>,
    short_root: FieldElement<'p>,
}

impl<'p> CtPlan<'p> {
    /// Builds and fully validates a plan. `long_root` must have exact order
    /// `long_len`; `short_len` must divide it as a power of two.
    pub fn new(long_root: FieldElement<'p>, long_len: usize, short_len: usize) -> Result<Self> {
        if !long_len.is_power_of_two() || !short_len.is_power_of_two() {
            return Err(Error::PlanInvalid(format!(
                "lengths must be powers of two (L={long_len}, S={short_len})"
            )));
        }
        if short_len > long_len {
            return Err(Error::PlanInvalid(format!(
                "short length {short_len} exceeds long length {long_len}"
            )));
        }
        check_root_order(long_len, &long_root)?;
        let lg_l = long_len.trailing_zeros();
        let lg_s = short_len.trailing_zeros();
        let (short_layers, radix2_layers) = if lg_s == 0 {
            // S = 1 forces L = 1: zero residual layers are available.
            if lg_l != 0 {
                return Err(Error::PlanInvalid("S = 1 only decomposes L = 1".into()));
            }
            (1, 0)
        } else {
            (lg_l / lg_s, lg_l % lg_s)
        };
        let short_root = long_root.pow_u64((long_len / short_len) as u64);
        // ω = ζ^(L/S) has exact order S; assert the contract literally.
        debug_assert!(check_root_order(short_len, &short_root).is_ok());
        Ok(CtPlan {
            long_len,
            short_len,
            short_layers,
            radix2_layers,
            long_root,
            short_root,
        })
    }

    pub fn long_len(&self) -> usize {
        self.long_len
    }

    pub fn short_len(&self) -> usize {
        self.short_len
    }

    /// d: how many levels of length-S transforms the recursion performs.
    pub fn short_layers(&self) -> u32 {
        self.short_layers
    }

    /// d': how many leftover radix-2 levels remain (0 ≤ d' < lg S).
    pub fn radix2_layers(&self) -> u32 {
        self.radix2_layers
    }

    pub fn long_root(&self) -> &FieldElement<'p> {
        &self.long_root
    }

    /// ω = ζ^(L/S): the root every injected short transform runs against.
    pub fn short_root(&self) -> &FieldElement<'p> {
        &self.short_root
    }
}

/// Long transform via layered short transforms.
///
/// Splits the input into S columns, recurses on rows with ζ^S, applies the
/// twiddle ζ^(row·col), and runs the injected engine for every length-S
/// transform — always against the same root ω, passed by value along with
/// the owned input row. The residual 2^(d') factor is handled by plain
/// radix-2 levels. Output is in natural order, equal to `dft_naive`.
pub fn dft_cooley_tukey<'p, F>(
    f: &PolyModXL<'p>,
    plan: &CtPlan<'p>,
    short_engine: &F,
) -> Result<PolyModXL<'p>>
where
    F: Fn(PolyModXL<'p>, FieldElement<'p>) -> Result<PolyModXL<'p>>,
{
    if f.len() != plan.long_len {
        return Err(Error::PlanInvalid(format!(
            "input length {} does not match plan length {}",
            f.len(),
            plan.long_len
        )));
    }
    let coeffs = ct_recurse(f.coeffs().to_vec(), &plan.long_root, plan.short_len, short_engine)?;
    Ok(PolyModXL { coeffs })
}

fn ct_recurse<'p, F>(
    data: Vec<FieldElement<'p>>,
    zeta: &FieldElement<'p>,
    s: usize,
    engine: &F,
) -> Result<Vec<FieldElement<'p>>>
where
    F: Fn(PolyModXL<'p>, FieldElement<'p>) -> Result<PolyModXL<'p>>,
{
    let l = data.len();
    if l == s {
        return Ok(engine(PolyModXL { coeffs: data }, zeta.clone())?.into_coeffs());
    }
    if l < s {
        // The residual 2^(d') tail, d' < lg S.
        return Ok(radix2_dispatch(&PolyModXL { coeffs: data }, zeta).into_coeffs());
    }
    let cols = s; // S columns at this level
    let rows = l / s;

    // The input read row-major as rows×cols puts each column's elements at
    // stride S; transposing makes every column a contiguous row.
    let mut work = transpose(&data, rows, cols);

    // Length-(L/S) sub-transforms along what are now rows, with root ζ^S.
    let inner_root = zeta.pow_u64(cols as u64);
    let mut transformed = Vec::with_capacity(l);
    for row in work.chunks(rows) {
        transformed.extend(ct_recurse(row.to_vec(), &inner_root, s, engine)?);
    }
    work = transformed;

    // Twiddle: entry (col c, position k) picks up ζ^(c·k).
    for c in 1..cols {
        let step = zeta.pow_u64(c as u64);
        let mut w = step.clone();
        for k in 1..rows {
            let idx = c * rows + k;
            work[idx] = work[idx].mul(&w);
            w = w.mul(&step);
        }
    }

    // Back to rows×cols: each row is now one length-S transform input.
    work = transpose(&work, cols, rows);
    let omega = zeta.pow_u64(rows as u64);
    let mut out = Vec::with_capacity(l);
    for row in work.chunks(cols) {
        let hat = engine(PolyModXL { coeffs: row.to_vec() }, omega.clone())?;
        out.extend(hat.into_coeffs());
    }

    // Row-major (k1, k2) order to the natural output index k2·... + k1.
    Ok(transpose(&out, rows, cols))
}

/// Inverse transform: forward with ζ⁻¹, then division by L.
pub fn idft<'p>(fhat: &PolyModXL<'p>, zeta: &FieldElement<'p>) -> Result<PolyModXL<'p>> {
    check_root_order(fhat.len(), zeta)?;
    let inv_root = zeta.inv();
    let unscaled = radix2_dispatch(fhat, &inv_root);
    let ctx = zeta.context();
    let scale = FieldElement::from_u64(ctx, fhat.len() as u64).inv();
    let coeffs = unscaled.coeffs().iter().map(|c| c.mul(&scale)).collect();
    Ok(PolyModXL { coeffs })
}

/// Entry-by-entry product of two equal-length polynomials.
pub fn pointwise_product<'p>(f: &PolyModXL<'p>, g: &PolyModXL<'p>) -> Result<PolyModXL<'p>> {
    if f.len() != g.len() {
        return Err(Error::PlanInvalid(format!(
            "pointwise product needs equal lengths, got {} and {}",
            f.len(),
            g.len()
        )));
    }
    let coeffs = f.coeffs().iter().zip(g.coeffs()).map(|(a, b)| a.mul(b)).collect();
    Ok(PolyModXL { coeffs })
}

/// Direct O(S²) cyclic convolution: h_i = Σ_j f_j · g_(i−j mod S).
/// Accepts any equal lengths (not only powers of two); the oracle.
pub fn cyclic_convolve_naive<'p>(
    f: &[FieldElement<'p>],
    g: &[FieldElement<'p>],
) -> Vec<FieldElement<'p>> {
    assert_eq!(f.len(), g.len(), "cyclic convolution needs equal lengths");
    let s = f.len();
    let mut out = Vec::with_capacity(s);
    for i in 0..s {
        let mut acc = FieldElement::zero(f[0].context());
        for (j, fj) in f.iter().enumerate() {
            acc = acc.add(&fj.mul(&g[(i + s - j) % s]));
        }
        out.push(acc);
    }
    out
}

/// Cyclic convolution through the transform: idft(dft(f) ⊙ dft(g)).
///
/// On narrow moduli the whole pipeline stays in flat Montgomery form; no
/// per-stage conversions.
pub fn cyclic_convolve_ntt<'p>(
    f: &PolyModXL<'p>,
    g: &PolyModXL<'p>,
    zeta: &FieldElement<'p>,
) -> Result<PolyModXL<'p>> {
    if f.len() != g.len() {
        return Err(Error::PlanInvalid(format!(
            "cyclic convolution needs equal lengths, got {} and {}",
            f.len(),
            g.len()
        )));
    }
    check_root_order(f.len(), zeta)?;
    let ctx = zeta.context();
    match ctx.modulus().limbs().len() {
        1 => Ok(convolve_via_kernel::<1>(f, g, zeta)),
        2 => Ok(convolve_via_kernel::<2>(f, g, zeta)),
        3 => Ok(convolve_via_kernel::<3>(f, g, zeta)),
        4 => Ok(convolve_via_kernel::<4>(f, g, zeta)),
        _ => {
            let product = pointwise_product(&radix2_dispatch(f, zeta), &radix2_dispatch(g, zeta))?;
            idft(&product, zeta)
        }
    }
}

fn convolve_via_kernel<'p, const W: usize>(
    f: &PolyModXL<'p>,
    g: &PolyModXL<'p>,
    zeta: &FieldElement<'p>,
) -> PolyModXL<'p> {
    let ctx = zeta.context();
    let kern = Kernel::<W>::new(ctx.modulus());
    let mut a: Vec<[u64; W]> = f.coeffs().iter().map(|c| kern.to_mont(c.value())).collect();
    let mut b: Vec<[u64; W]> = g.coeffs().iter().map(|c| kern.to_mont(c.value())).collect();
    kern.convolve_in_place(&mut a, &mut b, &kern.to_mont(zeta.value()));
    let coeffs = a
        .iter()
        .map(|m| FieldElement::new(ctx, kern.from_mont(m)))
        .collect();
    PolyModXL { coeffs }
}

/// Flat cyclic convolution of word-sized sequences mod p, used by the
/// integer-multiplication pipeline: inputs are chunk values < p, the result
/// is the length-L cyclic convolution, canonical residues.
pub(crate) fn convolve_chunks(
    ctx: &crate::primes::FftPrime,
    root: &Natural,
    a: &[u64],
    b: &[u64],
    l: usize,
) -> Vec<Natural> {
    assert!(l.is_power_of_two() && a.len() <= l && b.len() <= l);
    match ctx.modulus().limbs().len() {
        1 => convolve_chunks_width::<1>(ctx, root, a, b, l),
        2 => convolve_chunks_width::<2>(ctx, root, a, b, l),
        3 => convolve_chunks_width::<3>(ctx, root, a, b, l),
        4 => convolve_chunks_width::<4>(ctx, root, a, b, l),
        w => panic!("no flat kernel for {w}-limb modulus"),
    }
}

fn convolve_chunks_width<const W: usize>(
    ctx: &crate::primes::FftPrime,
    root: &Natural,
    a: &[u64],
    b: &[u64],
    l: usize,
) -> Vec<Natural> {
    let kern = Kernel::<W>::new(ctx.modulus());
    let mut fa = vec![[0u64; W]; l];
    let mut fb = vec![[0u64; W]; l];
    for (dst, &v) in fa.iter_mut().zip(a) {
        *dst = kern.to_mont(&Natural::from_u64(v));
    }
    for (dst, &v) in fb.iter_mut().zip(b) {
        *dst = kern.to_mont(&Natural::from_u64(v));
    }
    kern.convolve_in_place(&mut fa, &mut fb, &kern.to_mont(root));
    fa.iter().map(|m| kern.from_mont(m)).collect()
}
