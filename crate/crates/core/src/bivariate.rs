//! Chunked bivariate products.
//!
//! A product in F_p[X]/(X^S − 1) with p = a·2^m + 1 is rewritten over
//! Z[X,Y]/(X^S − 1, Y^k + a) by splitting each coefficient into k chunks of
//! r = m/k bits. The identity a·2^m ≡ −1 (mod p) makes the Y-reduction
//! Y^k ↦ −a compatible with reassembling chunks at their original bit
//! positions, so the integer-matrix product recombines to the F_p result.
//! The integer product here is a schoolbook oracle; the fast route computes
//! the same matrix modulo a much smaller prime p' and lifts it back, which
//! is where the recursion bottoms out.

use crate::bigint::{Natural, SignedInt};
use crate::dft::PolyModXL;
use crate::error::{Error, Result};
use crate::fp::FieldElement;
use crate::primes::FftPrime;

/// Chunking geometry: k chunks of r bits each, m = k·r, against the ambient
/// prime's multiplier a and an X-length S.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChunkParams {
    short_len: usize,
    chunk_count: usize,
    chunk_bits: usize,
    total_bits: usize,
    multiplier: u64,
}

impl ChunkParams {
    /// `chunk_count` must divide the prime's exponent m exactly.
    pub fn new(p: &FftPrime, short_len: usize, chunk_count: usize) -> Result<Self> {
        if !short_len.is_power_of_two() {
            return Err(Error::PlanInvalid(format!(
                "X-length {short_len} is not a power of two"
            )));
        }
        let m = p.exponent();
        if chunk_count == 0 || m % chunk_count != 0 {
            return Err(Error::PlanInvalid(format!(
                "chunk count {chunk_count} does not divide m = {m}"
            )));
        }
        Ok(ChunkParams {
            short_len,
            chunk_count,
            chunk_bits: m / chunk_count,
            total_bits: m,
            multiplier: p.multiplier(),
        })
    }

    pub fn short_len(&self) -> usize {
        self.short_len
    }

    pub fn chunk_count(&self) -> usize {
        self.chunk_count
    }

    pub fn chunk_bits(&self) -> usize {
        self.chunk_bits
    }

    pub fn total_bits(&self) -> usize {
        self.total_bits
    }

    pub fn multiplier(&self) -> u64 {
        self.multiplier
    }

    /// Worst-case magnitude of a product entry: 2^(2r)·S·k·a³. Every output
    /// of `mul_bivariate_integer` on split inputs stays within this.
    pub fn coefficient_bound(&self) -> Natural {
        let a = Natural::from_u64(self.multiplier);
        let sk = Natural::from_u64((self.short_len * self.chunk_count) as u64);
        Natural::one()
            .shl(2 * self.chunk_bits)
            .mul_oracle(&sk)
            .mul_oracle(&a)
            .mul_oracle(&a)
            .mul_oracle(&a)
    }
}

/// S×k matrix of signed integers: X-coefficient index i, Y-degree index j.
/// Holds split inputs (non-negative) and products (signed).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BivariateInt {
    short_len: usize,
    chunk_count: usize,
    entries: Vec<SignedInt>,
}

impl BivariateInt {
    pub fn zero(short_len: usize, chunk_count: usize) -> Self {
        BivariateInt {
            short_len,
            chunk_count,
            entries: vec![SignedInt::zero(); short_len * chunk_count],
        }
    }

    /// The ring unit: 1·X⁰Y⁰.
    pub fn unit(short_len: usize, chunk_count: usize) -> Self {
        let mut u = BivariateInt::zero(short_len, chunk_count);
        u.entries[0] = SignedInt::from_natural(Natural::one());
        u
    }

    pub fn short_len(&self) -> usize {
        self.short_len
    }

    pub fn chunk_count(&self) -> usize {
        self.chunk_count
    }

    pub fn entry(&self, i: usize, j: usize) -> &SignedInt {
        &self.entries[i * self.chunk_count + j]
    }

    pub fn entries(&self) -> &[SignedInt] {
        &self.entries
    }
}

/// The same matrix with entries reduced into a (usually much smaller) field.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BivariateMod<'q> {
    short_len: usize,
    chunk_count: usize,
    entries: Vec<FieldElement<'q>>,
}

impl<'q> BivariateMod<'q> {
    pub fn zero(ctx: &'q FftPrime, short_len: usize, chunk_count: usize) -> Self {
        BivariateMod {
            short_len,
            chunk_count,
            entries: vec![FieldElement::zero(ctx); short_len * chunk_count],
        }
    }

    pub fn unit(ctx: &'q FftPrime, short_len: usize, chunk_count: usize) -> Self {
        let mut u = BivariateMod::zero(ctx, short_len, chunk_count);
        u.entries[0] = FieldElement::one(ctx);
        u
    }

    pub fn short_len(&self) -> usize {
        self.short_len
    }

    pub fn chunk_count(&self) -> usize {
        self.chunk_count
    }

    pub fn entry(&self, i: usize, j: usize) -> &FieldElement<'q> {
        &self.entries[i * self.chunk_count + j]
    }
}

/// Splits each canonical coefficient of `f` into k chunks, j = 0 the most
/// significant. Row i satisfies Σ_j entry(i,j)·2^((k−1−j)·r) = f_i exactly;
/// chunks past j = 0 are < 2^r, and the top chunk is ≤ 2^r·a because
/// f_i ≤ a·2^m.
pub fn split(f: &PolyModXL<'_>, params: &ChunkParams) -> BivariateInt {
    assert_eq!(f.len(), params.short_len, "X-length mismatch");
    let k = params.chunk_count;
    let r = params.chunk_bits;
    let mut entries = Vec::with_capacity(f.len() * k);
    for c in f.coeffs() {
        let v = c.value();
        for j in 0..k {
            // j = 0 owns everything from bit (k−1)·r upward.
            let lo = (k - 1 - j) * r;
            let chunk = if j == 0 { v.shr(lo) } else { v.bitslice(lo, r) };
            entries.push(SignedInt::from_natural(chunk));
        }
    }
    BivariateInt {
        short_len: f.len(),
        chunk_count: k,
        entries,
    }
}

/// Exact product in Z[X,Y]/(X^S − 1, Y^k + a) by direct double convolution:
/// X-indices add mod S; Y-degrees at or above k fold back with a factor −a.
/// The small-scale oracle for the modular path. O(S²k²) entry products.
pub fn mul_bivariate_integer(
    f: &BivariateInt,
    g: &BivariateInt,
    params: &ChunkParams,
) -> BivariateInt {
    assert_eq!(f.short_len, g.short_len, "X-length mismatch");
    assert_eq!(f.chunk_count, g.chunk_count, "chunk count mismatch");
    assert_eq!(f.short_len, params.short_len);
    assert_eq!(f.chunk_count, params.chunk_count);
    let s = f.short_len;
    let k = f.chunk_count;
    let a = SignedInt::from_natural(Natural::from_u64(params.multiplier));
    let mut out = BivariateInt::zero(s, k);
    for i1 in 0..s {
        for j1 in 0..k {
            let x = f.entry(i1, j1);
            if x.is_zero() {
                continue;
            }
            for i2 in 0..s {
                let i = (i1 + i2) % s;
                for j2 in 0..k {
                    let y = g.entry(i2, j2);
                    if y.is_zero() {
                        continue;
                    }
                    let term = x * y;
                    let jsum = j1 + j2;
                    let idx = if jsum < k {
                        i * k + jsum
                    } else {
                        i * k + (jsum - k)
                    };
                    let signed = if jsum < k { term } else { -&(&term * &a) };
                    let sum = &out.entries[idx] + &signed;
                    out.entries[idx] = sum;
                }
            }
        }
    }
    out
}

/// Product in F_q[Y]/(Y^k + a): full product by Karatsuba, then the degree
/// fold c_j − a·c_(j+k).
pub fn pointwise_y_product<'q>(
    x: &[FieldElement<'q>],
    y: &[FieldElement<'q>],
    y_multiplier: &FieldElement<'q>,
) -> Vec<FieldElement<'q>> {
    assert_eq!(x.len(), y.len(), "Y-degree mismatch");
    let k = x.len();
    let full = poly_mul_karatsuba(x, y);
    let mut out = Vec::with_capacity(k);
    for j in 0..k {
        let mut c = full[j].clone();
        if j + k < full.len() {
            c = c.sub(&y_multiplier.mul(&full[j + k]));
        }
        out.push(c);
    }
    out
}

/// Plain polynomial product of coefficient slices, Karatsuba above a small
/// schoolbook base. Result length is x.len() + y.len() − 1.
fn poly_mul_karatsuba<'q>(x: &[FieldElement<'q>], y: &[FieldElement<'q>]) -> Vec<FieldElement<'q>> {
    debug_assert!(!x.is_empty() && !y.is_empty());
    let ctx = x[0].context();
    let n = x.len().max(y.len());
    if x.len().min(y.len()) <= 8 {
        let mut out = vec![FieldElement::zero(ctx); x.len() + y.len() - 1];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                out[i + j] = out[i + j].add(&xi.mul(yj));
            }
        }
        return out;
    }
    let h = n.div_ceil(2);
    let (x0, x1) = (&x[..h.min(x.len())], &x[h.min(x.len())..]);
    let (y0, y1) = (&y[..h.min(y.len())], &y[h.min(y.len())..]);
    let z0 = poly_mul_karatsuba(x0, y0);
    let mut out = vec![FieldElement::zero(ctx); x.len() + y.len() - 1];
    for (i, v) in z0.iter().enumerate() {
        out[i] = out[i].add(v);
    }
    if x1.is_empty() || y1.is_empty() {
        // Unbalanced tail: one cross product finishes the job.
        if !x1.is_empty() {
            let cross = poly_mul_karatsuba(x1, y0);
            for (i, v) in cross.iter().enumerate() {
                out[h + i] = out[h + i].add(v);
            }
        } else if !y1.is_empty() {
            let cross = poly_mul_karatsuba(x0, y1);
            for (i, v) in cross.iter().enumerate() {
                out[h + i] = out[h + i].add(v);
            }
        }
        return out;
    }
    let z2 = poly_mul_karatsuba(x1, y1);
    let xs = add_padded(x0, x1, ctx);
    let ys = add_padded(y0, y1, ctx);
    let z1 = poly_mul_karatsuba(&xs, &ys);
    for (i, v) in z1.iter().enumerate() {
        let mut mid = v.clone();
        if i < z0.len() {
            mid = mid.sub(&z0[i]);
        }
        if i < z2.len() {
            mid = mid.sub(&z2[i]);
        }
        out[h + i] = out[h + i].add(&mid);
    }
    for (i, v) in z2.iter().enumerate() {
        out[2 * h + i] = out[2 * h + i].add(v);
    }
    out
}

fn add_padded<'q>(
    a: &[FieldElement<'q>],
    b: &[FieldElement<'q>],
    ctx: &'q FftPrime,
) -> Vec<FieldElement<'q>> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(|| FieldElement::zero(ctx));
            match b.get(i) {
                Some(y) => x.add(y),
                None => x,
            }
        })
        .collect()
}

/// Product of the matrices over F_q via transforms along X and pointwise
/// Y-products: forward-transform each Y-column, multiply per X-point in
/// F_q[Y]/(Y^k + a), inverse-transform back. The transform engines are
/// injected: a plain radix-2 pair in tests, the recursive transform in the
/// full pipeline.
pub fn mul_bivariate_mod_prime<'q, Fwd, Inv>(
    u: &BivariateMod<'q>,
    v: &BivariateMod<'q>,
    y_multiplier: &FieldElement<'q>,
    forward: &Fwd,
    inverse: &Inv,
) -> Result<BivariateMod<'q>>
where
    Fwd: Fn(PolyModXL<'q>) -> Result<PolyModXL<'q>>,
    Inv: Fn(PolyModXL<'q>) -> Result<PolyModXL<'q>>,
{
    assert_eq!(u.short_len, v.short_len, "X-length mismatch");
    assert_eq!(u.chunk_count, v.chunk_count, "chunk count mismatch");
    let s = u.short_len;
    let k = u.chunk_count;

    let transform_columns = |m: &BivariateMod<'q>| -> Result<Vec<FieldElement<'q>>> {
        let mut hat = vec![FieldElement::zero(y_multiplier.context()); s * k];
        for j in 0..k {
            let col = PolyModXL::new((0..s).map(|i| m.entry(i, j).clone()).collect())?;
            let col_hat = forward(col)?;
            for (i, val) in col_hat.into_coeffs().into_iter().enumerate() {
                hat[i * k + j] = val;
            }
        }
        Ok(hat)
    };

    let u_hat = transform_columns(u)?;
    let v_hat = transform_columns(v)?;

    let mut w_hat = Vec::with_capacity(s * k);
    for i in 0..s {
        let row = pointwise_y_product(
            &u_hat[i * k..(i + 1) * k],
            &v_hat[i * k..(i + 1) * k],
            y_multiplier,
        );
        w_hat.extend(row);
    }

    let mut entries = vec![FieldElement::zero(y_multiplier.context()); s * k];
    for j in 0..k {
        let col = PolyModXL::new((0..s).map(|i| w_hat[i * k + j].clone()).collect())?;
        let col_out = inverse(col)?;
        for (i, val) in col_out.into_coeffs().into_iter().enumerate() {
            entries[i * k + j] = val;
        }
    }
    Ok(BivariateMod {
        short_len: s,
        chunk_count: k,
        entries,
    })
}

/// Reassembles a signed product matrix into F_p coefficients: coefficient i
/// is Σ_j entry(i,j)·2^((2k−2−j)·r) mod p, accumulated as one signed
/// overlap-add and reduced once.
pub fn recombine<'p>(
    h: &BivariateInt,
    params: &ChunkParams,
    target: &'p FftPrime,
) -> PolyModXL<'p> {
    assert_eq!(h.short_len, params.short_len);
    assert_eq!(h.chunk_count, params.chunk_count);
    let k = h.chunk_count;
    let r = params.chunk_bits;
    let coeffs = (0..h.short_len)
        .map(|i| {
            let mut acc = SignedInt::zero();
            for j in 0..k {
                acc = &acc + &h.entry(i, j).shl((2 * k - 2 - j) * r);
            }
            FieldElement::new(target, acc.rem_euclid(target.modulus()))
        })
        .collect();
    PolyModXL::new(coeffs).expect("short_len is a validated power of two")
}

/// Reduces every entry into F_q.
pub fn embed<'q>(x: &BivariateInt, ctx: &'q FftPrime) -> BivariateMod<'q> {
    BivariateMod {
        short_len: x.short_len,
        chunk_count: x.chunk_count,
        entries: x
            .entries
            .iter()
            .map(|e| FieldElement::from_signed(ctx, e))
            .collect(),
    }
}

/// Balanced lift of every entry back to signed integers. Valid only when
/// the field is big enough to separate values of magnitude ≤ `bound`:
/// q > 2·bound, checked here because undersized test profiles must fail
/// loudly rather than wrap silently.
pub fn lift(u: &BivariateMod<'_>, bound: &Natural) -> Result<BivariateInt> {
    let modulus = u
        .entries
        .first()
        .map(|e| e.context().modulus().clone())
        .expect("matrix has at least one entry");
    if modulus <= bound.mul_oracle(&Natural::from_u64(2)) {
        return Err(Error::LiftAmbiguous {
            bound_bits: bound.bit_length(),
            prime_bits: modulus.bit_length(),
        });
    }
    Ok(BivariateInt {
        short_len: u.short_len,
        chunk_count: u.chunk_count,
        entries: u.entries.iter().map(|e| e.balanced_lift()).collect(),
    })
}
