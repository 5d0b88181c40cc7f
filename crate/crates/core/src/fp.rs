//! Arithmetic in F_p for an FFT prime context: canonical-residue elements,
//! inversion and exponentiation, square roots, and construction of roots of
//! unity whose order is a power of two.

use std::fmt;

use crate::bigint::{Natural, SignedInt};
use crate::error::{Error, Result};
use crate::opcount;
use crate::primes::{modpow, FftPrime};
use crate::rng::{fingerprint, SplitMix64};

/// An element of F_p, stored as the canonical residue in [0, p).
///
/// Elements borrow their prime context; combining elements from different
/// contexts is a programming error caught by debug assertions.
#[derive(Clone)]
pub struct FieldElement<'p> {
    value: Natural,
    ctx: &'p FftPrime,
}

fn same_field(a: &FftPrime, b: &FftPrime) -> bool {
    std::ptr::eq(a, b) || a.modulus() == b.modulus()
}

impl<'p> FieldElement<'p> {
    /// Reduces an arbitrary natural into the field.
    pub fn new(ctx: &'p FftPrime, value: Natural) -> Self {
        FieldElement { value: ctx.reduce(&value), ctx }
    }

    pub fn from_u64(ctx: &'p FftPrime, value: u64) -> Self {
        FieldElement::new(ctx, Natural::from_u64(value))
    }

    /// Reduces a signed integer to its canonical residue.
    pub fn from_signed(ctx: &'p FftPrime, value: &SignedInt) -> Self {
        FieldElement { value: ctx.reduce_signed(value), ctx }
    }

    pub fn zero(ctx: &'p FftPrime) -> Self {
        FieldElement { value: Natural::zero(), ctx }
    }

    pub fn one(ctx: &'p FftPrime) -> Self {
        FieldElement { value: Natural::one(), ctx }
    }

    pub fn value(&self) -> &Natural {
        &self.value
    }

    pub fn into_value(self) -> Natural {
        self.value
    }

    pub fn context(&self) -> &'p FftPrime {
        self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        debug_assert!(same_field(self.ctx, rhs.ctx), "mixed field contexts");
        let mut v = &self.value + &rhs.value;
        if &v >= self.ctx.modulus() {
            v = &v - self.ctx.modulus();
        }
        FieldElement { value: v, ctx: self.ctx }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        debug_assert!(same_field(self.ctx, rhs.ctx), "mixed field contexts");
        let value = match self.value.checked_sub(&rhs.value) {
            Some(v) => v,
            None => &(self.ctx.modulus() - &rhs.value) + &self.value,
        };
        FieldElement { value, ctx: self.ctx }
    }

    pub fn neg(&self) -> Self {
        let value = if self.value.is_zero() {
            Natural::zero()
        } else {
            self.ctx.modulus() - &self.value
        };
        FieldElement { value, ctx: self.ctx }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        debug_assert!(same_field(self.ctx, rhs.ctx), "mixed field contexts");
        opcount::count_fp_mult();
        // Single-limb moduli cover all the oracle-scale test fields; skip
        // the allocation-heavy general route for them.
        let value = match (self.value.to_u64(), rhs.value.to_u64(), self.ctx.modulus().to_u64()) {
            (Some(a), Some(b), Some(p)) => {
                Natural::from_u64((a as u128 * b as u128 % p as u128) as u64)
            }
            _ => self.ctx.reduce(&self.value.mul_karatsuba(&rhs.value)),
        };
        FieldElement { value, ctx: self.ctx }
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    pub fn pow(&self, exp: &Natural) -> Self {
        FieldElement {
            value: modpow(&self.value, exp, self.ctx.modulus()),
            ctx: self.ctx,
        }
    }

    pub fn pow_u64(&self, exp: u64) -> Self {
        self.pow(&Natural::from_u64(exp))
    }

    /// Multiplicative inverse via Fermat's little theorem. Panics on zero.
    pub fn inv(&self) -> Self {
        assert!(!self.value.is_zero(), "inversion of zero in F_p");
        let exp = self.ctx.modulus() - &Natural::from_u64(2);
        self.pow(&exp)
    }

    /// The representative of this residue in (−p/2, p/2).
    pub fn balanced_lift(&self) -> SignedInt {
        let doubled = self.value.shl(1);
        if &doubled < self.ctx.modulus() {
            SignedInt::from_natural(self.value.clone())
        } else {
            SignedInt::from_parts(true, self.ctx.modulus() - &self.value)
        }
    }

    /// A square root, if this element is a quadratic residue.
    ///
    /// Tonelli–Shanks over the full 2-Sylow subgroup; deterministic (the
    /// non-residue scan walks 2, 3, 4, …), so repeated calls agree.
    pub fn sqrt(&self) -> Option<Self> {
        let p = self.ctx.modulus();
        if self.value.is_zero() || self.value.is_one() {
            return Some(self.clone());
        }
        let minus_one = p - &Natural::one();
        let half = minus_one.shr(1); // (p−1)/2
        if modpow(&self.value, &half, p) != Natural::one() {
            return None;
        }
        let s = minus_one.trailing_zeros();
        let q = minus_one.shr(s); // odd
        // Any quadratic non-residue generates the right coset structure.
        let z = (2u64..)
            .map(|z| FieldElement::from_u64(self.ctx, z))
            .find(|z| modpow(z.value(), &half, p) == minus_one)
            .expect("odd prime has a non-residue below p");

        let mut m = s;
        let mut c = z.pow(&q);
        let mut t = self.pow(&q);
        let mut r = self.pow(&(&q + &Natural::one()).shr(1));
        while !t.value.is_one() {
            // Least i with t^(2^i) = 1; exists and is < m.
            let mut i = 0;
            let mut probe = t.clone();
            while !probe.value.is_one() {
                probe = probe.square();
                i += 1;
            }
            let mut b = c;
            for _ in 0..m - i - 1 {
                b = b.square();
            }
            m = i;
            c = b.square();
            t = t.mul(&c);
            r = r.mul(&b);
        }
        debug_assert_eq!(r.square().value, self.value);
        Some(r)
    }
}

impl PartialEq for FieldElement<'_> {
    fn eq(&self, other: &Self) -> bool {
        debug_assert!(same_field(self.ctx, other.ctx), "mixed field contexts");
        self.value == other.value
    }
}

impl Eq for FieldElement<'_> {}

impl fmt::Debug for FieldElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} mod {:?}", self.value, self.ctx.modulus())
    }
}

/// A root of unity of exact multiplicative order `order` (a power of two).
///
/// Draws random elements x and keeps c = x^((p−1)/2^v) once c generates the
/// 2-Sylow subgroup (checked by c^(2^(v−1)) = −1), then lowers c to the
/// requested order. The draw sequence is seeded from (p, order), so the
/// returned root is stable across calls.
pub fn root_of_unity(ctx: &FftPrime, order: u64) -> Result<FieldElement<'_>> {
    let v = ctx.two_adicity() as u64;
    if order == 0 || !order.is_power_of_two() || order.trailing_zeros() as u64 > v {
        return Err(Error::RootUnavailable { order, exponent: ctx.exponent() });
    }
    if order == 1 {
        return Ok(FieldElement::one(ctx));
    }
    let lg_order = order.trailing_zeros() as u64;
    let p = ctx.modulus();
    let minus_one = p - &Natural::one();
    let odd_part = minus_one.shr(v as usize);
    let mut rng = SplitMix64::new(fingerprint(p.limbs()) ^ order);
    loop {
        let raw: Vec<u64> = (0..p.limbs().len()).map(|_| rng.next_u64()).collect();
        let x = FieldElement::new(ctx, Natural::from_limbs(&raw));
        if x.is_zero() {
            continue;
        }
        let c = x.pow(&odd_part);
        // c has order dividing 2^v; it generates the whole subgroup exactly
        // when its (v−1)-th square is −1.
        let mut probe = c.clone();
        for _ in 0..v - 1 {
            probe = probe.square();
        }
        if probe.value() != &minus_one {
            continue;
        }
        let mut zeta = c;
        for _ in 0..v - lg_order {
            zeta = zeta.square();
        }
        return Ok(zeta);
    }
}
