use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use smallvec::{smallvec, SmallVec};

use crate::error::{Error, Result};

use super::DEFAULT_KARATSUBA_CUTOFF;

// Six inline limbs cover 384 bits without touching the heap, enough for the
// field elements and double-width products of every transform-scale prime.
pub(crate) type LimbVec = SmallVec<[u64; 6]>;

/// Unsigned arbitrary-precision integer.
///
/// Representation: little-endian 64-bit limbs with no trailing zero limbs;
/// zero is the empty limb vector. All public constructors and operations
/// maintain this canonical form.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Natural {
    limbs: LimbVec,
}

impl Natural {
    pub fn zero() -> Self {
        Natural { limbs: LimbVec::new() }
    }

    pub fn one() -> Self {
        Natural { limbs: smallvec![1] }
    }

    pub fn from_u64(v: u64) -> Self {
        if v == 0 {
            Natural::zero()
        } else {
            Natural { limbs: smallvec![v] }
        }
    }

    pub fn from_u128(v: u128) -> Self {
        let lo = v as u64;
        let hi = (v >> 64) as u64;
        if hi == 0 {
            Natural::from_u64(lo)
        } else {
            Natural { limbs: smallvec![lo, hi] }
        }
    }

    /// Builds from little-endian limbs; trailing zeros are stripped.
    pub fn from_limbs(limbs: &[u64]) -> Self {
        let mut v: LimbVec = SmallVec::from_slice(limbs);
        normalize(&mut v);
        Natural { limbs: v }
    }

    pub(crate) fn from_limb_vec(mut limbs: LimbVec) -> Self {
        normalize(&mut limbs);
        Natural { limbs }
    }

    /// Little-endian limbs, canonical (no trailing zeros).
    pub fn limbs(&self) -> &[u64] {
        &self.limbs
    }

    pub fn is_zero(&self) -> bool {
        self.limbs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.limbs.len() == 1 && self.limbs[0] == 1
    }

    pub fn is_even(&self) -> bool {
        self.limbs.first().map_or(true, |&l| l & 1 == 0)
    }

    pub fn to_u64(&self) -> Option<u64> {
        match self.limbs.len() {
            0 => Some(0),
            1 => Some(self.limbs[0]),
            _ => None,
        }
    }

    pub fn to_u128(&self) -> Option<u128> {
        match self.limbs.len() {
            0 => Some(0),
            1 => Some(self.limbs[0] as u128),
            2 => Some(self.limbs[0] as u128 | (self.limbs[1] as u128) << 64),
            _ => None,
        }
    }

    /// Number of significant bits; 0 for zero.
    pub fn bit_length(&self) -> usize {
        match self.limbs.last() {
            None => 0,
            Some(&top) => 64 * (self.limbs.len() - 1) + (64 - top.leading_zeros() as usize),
        }
    }

    /// Bit `i` (little-endian), false beyond the top.
    pub fn bit(&self, i: usize) -> bool {
        let limb = i / 64;
        if limb >= self.limbs.len() {
            return false;
        }
        (self.limbs[limb] >> (i % 64)) & 1 == 1
    }

    /// Number of trailing zero bits. Panics on zero.
    pub fn trailing_zeros(&self) -> usize {
        assert!(!self.is_zero(), "trailing_zeros of zero");
        let mut tz = 0;
        for &limb in &self.limbs {
            if limb == 0 {
                tz += 64;
            } else {
                return tz + limb.trailing_zeros() as usize;
            }
        }
        unreachable!("canonical Natural has a nonzero limb");
    }

    pub fn checked_sub(&self, rhs: &Natural) -> Option<Natural> {
        sub_limbs(&self.limbs, &rhs.limbs).map(Natural::from_limb_vec)
    }

    /// Schoolbook O(n²) product. Kept free of any sharing with the transform
    /// pipeline so it can serve as that pipeline's correctness oracle.
    pub fn mul_oracle(&self, rhs: &Natural) -> Natural {
        Natural::from_limb_vec(schoolbook(&self.limbs, &rhs.limbs))
    }

    /// Karatsuba product with the default schoolbook cutoff.
    pub fn mul_karatsuba(&self, rhs: &Natural) -> Natural {
        self.mul_karatsuba_with_cutoff(rhs, DEFAULT_KARATSUBA_CUTOFF)
    }

    /// Karatsuba product; below `cutoff_limbs` recursion uses schoolbook.
    pub fn mul_karatsuba_with_cutoff(&self, rhs: &Natural, cutoff_limbs: usize) -> Natural {
        let cutoff = cutoff_limbs.max(1);
        Natural::from_limb_vec(karatsuba(&self.limbs, &rhs.limbs, cutoff))
    }

    /// Quotient and remainder: `self = q·rhs + r`, `0 ≤ r < rhs`.
    /// Panics if `rhs` is zero.
    pub fn divmod(&self, rhs: &Natural) -> (Natural, Natural) {
        assert!(!rhs.is_zero(), "division by zero");
        if self < rhs {
            return (Natural::zero(), self.clone());
        }
        if rhs.limbs.len() == 1 {
            let (q, r) = div_by_limb(&self.limbs, rhs.limbs[0]);
            return (Natural::from_limb_vec(q), Natural::from_u64(r));
        }
        let (q, r) = knuth_divmod(&self.limbs, &rhs.limbs);
        (Natural::from_limb_vec(q), Natural::from_limb_vec(r))
    }

    pub fn shl(&self, bits: usize) -> Natural {
        if self.is_zero() || bits == 0 {
            return self.clone();
        }
        let limb_shift = bits / 64;
        let bit_shift = bits % 64;
        let mut out: LimbVec = smallvec![0; self.limbs.len() + limb_shift + 1];
        for (i, &limb) in self.limbs.iter().enumerate() {
            if bit_shift == 0 {
                out[i + limb_shift] = limb;
            } else {
                out[i + limb_shift] |= limb << bit_shift;
                out[i + limb_shift + 1] |= limb >> (64 - bit_shift);
            }
        }
        Natural::from_limb_vec(out)
    }

    pub fn shr(&self, bits: usize) -> Natural {
        let limb_shift = bits / 64;
        if limb_shift >= self.limbs.len() {
            return Natural::zero();
        }
        let bit_shift = bits % 64;
        let src = &self.limbs[limb_shift..];
        let mut out: LimbVec = SmallVec::with_capacity(src.len());
        for i in 0..src.len() {
            let mut limb = src[i] >> bit_shift;
            if bit_shift > 0 && i + 1 < src.len() {
                limb |= src[i + 1] << (64 - bit_shift);
            }
            out.push(limb);
        }
        Natural::from_limb_vec(out)
    }

    /// `⌊self / 2^lo⌋ mod 2^width`: the `width` bits starting at bit `lo`.
    pub fn bitslice(&self, lo: usize, width: usize) -> Natural {
        if width == 0 {
            return Natural::zero();
        }
        let shifted = self.shr(lo);
        let keep_limbs = width.div_ceil(64);
        if shifted.limbs.len() < keep_limbs {
            return shifted;
        }
        let mut out: LimbVec = SmallVec::from_slice(&shifted.limbs[..keep_limbs]);
        let top_bits = width % 64;
        if top_bits != 0 {
            out[keep_limbs - 1] &= (1u64 << top_bits) - 1;
        }
        Natural::from_limb_vec(out)
    }

    /// Parses big-endian hex (no prefix). Accepts upper or lower case and
    /// leading zeros; rejects empty input and non-hex characters.
    pub fn from_hex(s: &str) -> Result<Natural> {
        if s.is_empty() {
            return Err(Error::InvalidHex("empty string".into()));
        }
        let bytes = s.as_bytes();
        let mut limbs: LimbVec = SmallVec::with_capacity(bytes.len().div_ceil(16));
        // Consume 16-digit groups from the little end.
        let mut end = bytes.len();
        while end > 0 {
            let start = end.saturating_sub(16);
            let mut limb: u64 = 0;
            for &b in &bytes[start..end] {
                let nibble = match b {
                    b'0'..=b'9' => b - b'0',
                    b'a'..=b'f' => b - b'a' + 10,
                    b'A'..=b'F' => b - b'A' + 10,
                    _ => {
                        return Err(Error::InvalidHex(format!(
                            "unexpected character {:?}",
                            b as char
                        )))
                    }
                };
                limb = limb << 4 | nibble as u64;
            }
            limbs.push(limb);
            end = start;
        }
        Ok(Natural::from_limb_vec(limbs))
    }

    /// Lowercase big-endian hex, no prefix, no leading zeros; zero is "0".
    pub fn to_hex(&self) -> String {
        match self.limbs.split_last() {
            None => "0".to_string(),
            Some((&top, rest)) => {
                let mut s = format!("{top:x}");
                for &limb in rest.iter().rev() {
                    s.push_str(&format!("{limb:016x}"));
                }
                s
            }
        }
    }
}

impl Ord for Natural {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_limbs(&self.limbs, &other.limbs)
    }
}

impl PartialOrd for Natural {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Natural {
    type Output = Natural;
    fn add(self, rhs: &Natural) -> Natural {
        Natural::from_limb_vec(add_limbs(&self.limbs, &rhs.limbs))
    }
}

impl Sub for &Natural {
    type Output = Natural;
    fn sub(self, rhs: &Natural) -> Natural {
        self.checked_sub(rhs).expect("natural subtraction underflow")
    }
}

impl Mul for &Natural {
    type Output = Natural;
    fn mul(self, rhs: &Natural) -> Natural {
        self.mul_karatsuba(rhs)
    }
}

impl fmt::Debug for Natural {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "0x{}", self.to_hex())
    }
}

fn normalize(limbs: &mut LimbVec) {
    while limbs.last() == Some(&0) {
        limbs.pop();
    }
}

pub(crate) fn cmp_limbs(x: &[u64], y: &[u64]) -> Ordering {
    if x.len() != y.len() {
        return x.len().cmp(&y.len());
    }
    for (a, b) in x.iter().rev().zip(y.iter().rev()) {
        match a.cmp(b) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

pub(crate) fn add_limbs(x: &[u64], y: &[u64]) -> LimbVec {
    let (long, short) = if x.len() >= y.len() { (x, y) } else { (y, x) };
    let mut out: LimbVec = SmallVec::with_capacity(long.len() + 1);
    let mut carry = 0u64;
    for i in 0..long.len() {
        let (s1, c1) = long[i].overflowing_add(*short.get(i).unwrap_or(&0));
        let (s2, c2) = s1.overflowing_add(carry);
        out.push(s2);
        carry = (c1 as u64) + (c2 as u64);
    }
    if carry > 0 {
        out.push(carry);
    }
    out
}

/// `x − y`, or None on underflow.
pub(crate) fn sub_limbs(x: &[u64], y: &[u64]) -> Option<LimbVec> {
    if cmp_limbs(x, y) == Ordering::Less {
        return None;
    }
    let mut out: LimbVec = SmallVec::with_capacity(x.len());
    let mut borrow = 0u64;
    for i in 0..x.len() {
        let (d1, b1) = x[i].overflowing_sub(*y.get(i).unwrap_or(&0));
        let (d2, b2) = d1.overflowing_sub(borrow);
        out.push(d2);
        borrow = (b1 as u64) + (b2 as u64);
    }
    debug_assert_eq!(borrow, 0);
    normalize(&mut out);
    Some(out)
}

/// res[offset..] += addend, propagating the carry.
fn add_at(res: &mut LimbVec, addend: &[u64], offset: usize) {
    if addend.is_empty() {
        return;
    }
    let need = offset + addend.len() + 1;
    if res.len() < need {
        res.resize(need, 0);
    }
    let mut carry = 0u64;
    for (i, &a) in addend.iter().enumerate() {
        let (s1, c1) = res[offset + i].overflowing_add(a);
        let (s2, c2) = s1.overflowing_add(carry);
        res[offset + i] = s2;
        carry = (c1 as u64) + (c2 as u64);
    }
    let mut i = offset + addend.len();
    while carry > 0 {
        let (s, c) = res[i].overflowing_add(carry);
        res[i] = s;
        carry = c as u64;
        i += 1;
    }
}

/// res[..] += x * y[..] for a single limb x; returns the final carry.
#[inline]
fn addmul_limb(res: &mut [u64], x: u64, y: &[u64]) -> u64 {
    let xw = x as u128;
    let mut carry = 0u64;
    for (r, &yv) in res.iter_mut().zip(y) {
        // Never overflows u128: (2^64−1)² + 2·(2^64−1) = 2^128 − 1.
        let t = xw * yv as u128 + *r as u128 + carry as u128;
        *r = t as u64;
        carry = (t >> 64) as u64;
    }
    carry
}

pub(crate) fn schoolbook(x: &[u64], y: &[u64]) -> LimbVec {
    if x.is_empty() || y.is_empty() {
        return LimbVec::new();
    }
    let mut res: LimbVec = smallvec![0; x.len() + y.len()];
    for (i, &xi) in x.iter().enumerate() {
        let carry = addmul_limb(&mut res[i..i + y.len()], xi, y);
        // The running total fits in i + y.len() + 1 limbs, so this add
        // cannot itself carry out.
        res[i + y.len()] = res[i + y.len()].wrapping_add(carry);
    }
    normalize(&mut res);
    res
}

fn karatsuba(x: &[u64], y: &[u64], cutoff: usize) -> LimbVec {
    // Strip trailing zeros the recursion may have exposed.
    let x = &x[..x.len() - x.iter().rev().take_while(|&&l| l == 0).count()];
    let y = &y[..y.len() - y.iter().rev().take_while(|&&l| l == 0).count()];
    if x.len().min(y.len()) <= cutoff {
        return schoolbook(x, y);
    }
    let h = x.len().max(y.len()) / 2;
    let (x0, x1) = x.split_at(h.min(x.len()));
    let (y0, y1) = y.split_at(h.min(y.len()));

    let z0 = karatsuba(x0, y0, cutoff);
    let z2 = karatsuba(x1, y1, cutoff);
    let sx = add_limbs(x0, x1);
    let sy = add_limbs(y0, y1);
    let mut z1 = karatsuba(&sx, &sy, cutoff);
    // z1 = (x0+x1)(y0+y1) − z0 − z2 = x0·y1 + x1·y0, never negative.
    z1 = sub_limbs(&z1, &z0).expect("karatsuba middle term underflow");
    z1 = sub_limbs(&z1, &z2).expect("karatsuba middle term underflow");

    let mut res: LimbVec = smallvec![0; x.len() + y.len()];
    add_at(&mut res, &z0, 0);
    add_at(&mut res, &z1, h);
    add_at(&mut res, &z2, 2 * h);
    normalize(&mut res);
    res
}

fn div_by_limb(x: &[u64], d: u64) -> (LimbVec, u64) {
    let mut q: LimbVec = smallvec![0; x.len()];
    let mut rem: u64 = 0;
    for i in (0..x.len()).rev() {
        let cur = (rem as u128) << 64 | x[i] as u128;
        q[i] = (cur / d as u128) as u64;
        rem = (cur % d as u128) as u64;
    }
    normalize(&mut q);
    (q, rem)
}

/// Knuth algorithm D for multi-limb divisors. Requires `x ≥ d`, `d.len() ≥ 2`.
fn knuth_divmod(x: &[u64], d: &[u64]) -> (LimbVec, LimbVec) {
    let n = d.len();
    let shift = d[n - 1].leading_zeros() as usize;

    // Normalized copies: top limb of v has its high bit set.
    let v = shl_limbs(d, shift, false);
    let mut u = shl_limbs(x, shift, true); // one extra high limb
    let m = u.len() - n - 1;

    let v_top = v[n - 1];
    let v_next = v[n - 2];
    let mut q: LimbVec = smallvec![0; m + 1];

    for j in (0..=m).rev() {
        // Estimate the quotient limb from the top two limbs of the window.
        let num = (u[j + n] as u128) << 64 | u[j + n - 1] as u128;
        let mut qhat = num / v_top as u128;
        let mut rhat = num % v_top as u128;
        if qhat >> 64 != 0 {
            qhat = u64::MAX as u128;
            rhat = num - qhat * v_top as u128;
        }
        while rhat >> 64 == 0 && qhat * v_next as u128 > (rhat << 64 | u[j + n - 2] as u128) {
            qhat -= 1;
            rhat += v_top as u128;
        }

        // u[j..j+n+1] −= qhat · v
        let qh = qhat as u64;
        let mut borrow = 0u64;
        let mut mul_carry = 0u64;
        for i in 0..n {
            let t = qh as u128 * v[i] as u128 + mul_carry as u128;
            mul_carry = (t >> 64) as u64;
            let (d1, b1) = u[j + i].overflowing_sub(t as u64);
            let (d2, b2) = d1.overflowing_sub(borrow);
            u[j + i] = d2;
            borrow = (b1 as u64) + (b2 as u64);
        }
        let (d1, b1) = u[j + n].overflowing_sub(mul_carry);
        let (d2, b2) = d1.overflowing_sub(borrow);
        u[j + n] = d2;

        if b1 || b2 {
            // qhat was one too large: add v back once.
            let mut carry = 0u64;
            for i in 0..n {
                let (s1, c1) = u[j + i].overflowing_add(v[i]);
                let (s2, c2) = s1.overflowing_add(carry);
                u[j + i] = s2;
                carry = (c1 as u64) + (c2 as u64);
            }
            u[j + n] = u[j + n].wrapping_add(carry);
            q[j] = qh.wrapping_sub(1);
        } else {
            q[j] = qh;
        }
    }

    let rem = shr_limbs(&u[..n], shift);
    normalize(&mut q);
    (q, rem)
}

fn shl_limbs(x: &[u64], shift: usize, extra_limb: bool) -> LimbVec {
    let mut out: LimbVec = smallvec![0; x.len() + extra_limb as usize];
    if shift == 0 {
        out[..x.len()].copy_from_slice(x);
        return out;
    }
    let mut carry = 0u64;
    for (i, &limb) in x.iter().enumerate() {
        out[i] = limb << shift | carry;
        carry = limb >> (64 - shift);
    }
    if extra_limb {
        out[x.len()] = carry;
    } else {
        debug_assert_eq!(carry, 0);
    }
    out
}

fn shr_limbs(x: &[u64], shift: usize) -> LimbVec {
    let mut out: LimbVec = SmallVec::from_slice(x);
    if shift > 0 {
        for i in 0..out.len() {
            out[i] >>= shift;
            if i + 1 < x.len() {
                out[i] |= x[i + 1] << (64 - shift);
            }
        }
    }
    normalize(&mut out);
    out
}
