//! Flat word-level NTT kernel.
//!
//! Values live in Montgomery form as fixed `[u64; W]` arrays, so the
//! butterfly loop runs without heap traffic or modulus-width branches; the
//! compiler unrolls the W-limb arithmetic per instantiation. Used for moduli
//! up to four limbs; wider moduli fall back to the field-element engines.

use crate::bigint::Natural;
use crate::opcount;

// Scratch rows for the CIOS accumulator: W + 2 limbs, sized for W ≤ 6.
const SCRATCH: usize = 8;

pub(crate) struct Kernel<const W: usize> {
    p: [u64; W],
    /// −p⁻¹ mod 2^64.
    n0: u64,
    /// 2^(128·W) mod p, for conversion into Montgomery form.
    r2: [u64; W],
}

#[inline(always)]
fn mac(acc: u64, x: u64, y: u64, carry: u64) -> (u64, u64) {
    let t = acc as u128 + (x as u128) * (y as u128) + carry as u128;
    (t as u64, (t >> 64) as u64)
}

impl<const W: usize> Kernel<W> {
    pub fn new(modulus: &Natural) -> Self {
        assert!(W >= 1 && W + 2 <= SCRATCH);
        let limbs = modulus.limbs();
        assert_eq!(limbs.len(), W, "modulus width does not match kernel width");
        assert_eq!(limbs[0] & 1, 1, "Montgomery arithmetic needs an odd modulus");
        let mut p = [0u64; W];
        p.copy_from_slice(limbs);
        // Newton iteration doubles correct low bits each round; five rounds
        // from a 1-bit seed cover all 64.
        let mut inv = p[0];
        for _ in 0..5 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(p[0].wrapping_mul(inv)));
        }
        let n0 = inv.wrapping_neg();
        let r2_nat = Natural::one().shl(128 * W).divmod(modulus).1;
        let mut r2 = [0u64; W];
        r2[..r2_nat.limbs().len()].copy_from_slice(r2_nat.limbs());
        Kernel { p, n0, r2 }
    }

    /// x·y·R⁻¹ mod p (CIOS), inputs and output < p.
    #[inline]
    pub fn mont_mul(&self, x: &[u64; W], y: &[u64; W]) -> [u64; W] {
        let mut t = [0u64; SCRATCH];
        for i in 0..W {
            let mut carry = 0u64;
            for j in 0..W {
                let (lo, hi) = mac(t[j], x[i], y[j], carry);
                t[j] = lo;
                carry = hi;
            }
            let (s, c) = t[W].overflowing_add(carry);
            t[W] = s;
            t[W + 1] += c as u64;

            let m = t[0].wrapping_mul(self.n0);
            let (_, mut carry) = mac(t[0], m, self.p[0], 0);
            for j in 1..W {
                let (lo, hi) = mac(t[j], m, self.p[j], carry);
                t[j - 1] = lo;
                carry = hi;
            }
            let (s, c) = t[W].overflowing_add(carry);
            t[W - 1] = s;
            t[W] = t[W + 1] + c as u64;
            t[W + 1] = 0;
        }
        let mut out = [0u64; W];
        out.copy_from_slice(&t[..W]);
        if t[W] != 0 || cmp_ge(&out, &self.p) {
            sub_in_place(&mut out, &self.p);
        }
        out
    }

    #[inline]
    pub fn add_mod(&self, x: &[u64; W], y: &[u64; W]) -> [u64; W] {
        let mut out = [0u64; W];
        let mut carry = false;
        for i in 0..W {
            let (s, c1) = x[i].overflowing_add(y[i]);
            let (s, c2) = s.overflowing_add(carry as u64);
            out[i] = s;
            carry = c1 | c2;
        }
        if carry || cmp_ge(&out, &self.p) {
            sub_in_place(&mut out, &self.p);
        }
        out
    }

    #[inline]
    pub fn sub_mod(&self, x: &[u64; W], y: &[u64; W]) -> [u64; W] {
        let mut out = [0u64; W];
        let mut borrow = false;
        for i in 0..W {
            let (d, b1) = x[i].overflowing_sub(y[i]);
            let (d, b2) = d.overflowing_sub(borrow as u64);
            out[i] = d;
            borrow = b1 | b2;
        }
        if borrow {
            let mut carry = false;
            for i in 0..W {
                let (s, c1) = out[i].overflowing_add(self.p[i]);
                let (s, c2) = s.overflowing_add(carry as u64);
                out[i] = s;
                carry = c1 | c2;
            }
        }
        out
    }

    pub fn to_mont(&self, x: &Natural) -> [u64; W] {
        let limbs = x.limbs();
        debug_assert!(limbs.len() <= W, "value wider than the modulus");
        let mut arr = [0u64; W];
        arr[..limbs.len()].copy_from_slice(limbs);
        self.mont_mul(&arr, &self.r2)
    }

    pub fn from_mont(&self, x: &[u64; W]) -> Natural {
        let mut one = [0u64; W];
        one[0] = 1;
        let canonical = self.mont_mul(x, &one);
        Natural::from_limbs(&canonical)
    }

    pub fn one_mont(&self) -> [u64; W] {
        let mut one = [0u64; W];
        one[0] = 1;
        self.mont_mul(&one, &self.r2)
    }

    pub fn pow(&self, base: &[u64; W], mut exp: u64) -> [u64; W] {
        let mut acc = self.one_mont();
        let mut sq = *base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mont_mul(&acc, &sq);
            }
            sq = self.mont_mul(&sq, &sq);
            exp >>= 1;
        }
        acc
    }

    /// In-place radix-2 transform of Montgomery-form data; `root_mont` must
    /// have exact order `data.len()`. Natural-order output.
    pub fn forward(&self, data: &mut [[u64; W]], root_mont: &[u64; W]) {
        let l = data.len();
        debug_assert!(l.is_power_of_two());
        bit_reverse(data);
        let mut twiddles: Vec<[u64; W]> = Vec::with_capacity(l / 2);
        let mut len = 2;
        while len <= l {
            let w_len = self.pow(root_mont, (l / len) as u64);
            twiddles.clear();
            let mut w = self.one_mont();
            for _ in 0..len / 2 {
                twiddles.push(w);
                w = self.mont_mul(&w, &w_len);
            }
            for block in (0..l).step_by(len) {
                for j in 0..len / 2 {
                    let hi = self.mont_mul(&data[block + j + len / 2], &twiddles[j]);
                    let lo = data[block + j];
                    data[block + j] = self.add_mod(&lo, &hi);
                    data[block + j + len / 2] = self.sub_mod(&lo, &hi);
                }
            }
            len <<= 1;
        }
        if l >= 2 {
            opcount::count_fp_mults((l as u64 / 2) * l.trailing_zeros() as u64);
        }
    }

    /// Cyclic convolution, everything staying in Montgomery form: forward
    /// both inputs, multiply pointwise, inverse-transform, divide by L.
    /// The result lands in `a`; `b` is clobbered.
    pub fn convolve_in_place(&self, a: &mut [[u64; W]], b: &mut [[u64; W]], root_mont: &[u64; W]) {
        let l = a.len();
        assert_eq!(l, b.len());
        self.forward(a, root_mont);
        self.forward(b, root_mont);
        for (x, y) in a.iter_mut().zip(b.iter()) {
            *x = self.mont_mul(x, y);
        }
        opcount::count_fp_mults(l as u64);
        // ζ⁻¹ = ζ^(L−1); L⁻¹ = p − (p−1)/L since L divides p − 1.
        let inv_root = self.pow(root_mont, l as u64 - 1);
        self.forward(a, &inv_root);
        let l_inv = self.l_inverse_mont(l);
        for x in a.iter_mut() {
            *x = self.mont_mul(x, &l_inv);
        }
        opcount::count_fp_mults(l as u64);
    }

    fn l_inverse_mont(&self, l: usize) -> [u64; W] {
        if l == 1 {
            return self.one_mont();
        }
        let shift = l.trailing_zeros();
        debug_assert!(shift < 64);
        // (p − 1) >> lg L, exact because 2^lg L divides p − 1.
        let mut q = self.p;
        q[0] -= 1; // p is odd: no borrow
        for i in 0..W {
            let next = if i + 1 < W { q[i + 1] } else { 0 };
            q[i] = (q[i] >> shift) | (next << (64 - shift) as u32);
        }
        let mut linv = [0u64; W];
        let mut borrow = false;
        for i in 0..W {
            let (d, b1) = self.p[i].overflowing_sub(q[i]);
            let (d, b2) = d.overflowing_sub(borrow as u64);
            linv[i] = d;
            borrow = b1 | b2;
        }
        debug_assert!(!borrow);
        self.mont_mul(&linv, &self.r2)
    }
}

#[inline]
fn cmp_ge<const W: usize>(x: &[u64; W], y: &[u64; W]) -> bool {
    for i in (0..W).rev() {
        if x[i] != y[i] {
            return x[i] > y[i];
        }
    }
    true
}

#[inline]
fn sub_in_place<const W: usize>(x: &mut [u64; W], y: &[u64; W]) {
    let mut borrow = false;
    for i in 0..W {
        let (d, b1) = x[i].overflowing_sub(y[i]);
        let (d, b2) = d.overflowing_sub(borrow as u64);
        x[i] = d;
        borrow = b1 | b2;
    }
}

fn bit_reverse<T>(data: &mut [T]) {
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    fn random_below(rng: &mut SplitMix64, p: &Natural) -> Natural {
        let bits = p.bit_length();
        loop {
            let limbs: Vec<u64> =
                (0..p.limbs().len()).map(|_| rng.next_u64()).collect();
            let x = Natural::from_limbs(&limbs).bitslice(0, bits);
            if x < *p {
                return x;
            }
        }
    }

    fn mont_mul_matches_oracle<const W: usize>(modulus: &Natural, rng: &mut SplitMix64) {
        let kern = Kernel::<W>::new(modulus);
        for _ in 0..50 {
            let x = random_below(rng, modulus);
            let y = random_below(rng, modulus);
            let got = kern.from_mont(&kern.mont_mul(&kern.to_mont(&x), &kern.to_mont(&y)));
            let want = x.mul_oracle(&y).divmod(modulus).1;
            assert_eq!(got, want);
        }
    }

    #[test]
    fn mont_mul_all_widths() {
        let mut rng = SplitMix64::new(0xfeed);
        mont_mul_matches_oracle::<1>(&Natural::from_u64(0xffff_ffff_0000_0001), &mut rng);
        mont_mul_matches_oracle::<2>(
            &Natural::from_u128((1u128 << 100) + 277), // odd, not prime: CIOS doesn't care
            &mut rng,
        );
        let p135 = crate::primes::find_p0(135, 500).unwrap();
        mont_mul_matches_oracle::<3>(p135.modulus(), &mut rng);
        let wide = Natural::from_limbs(&[0x1, 0x0, 0x0, 0x8000_0000_0000_0000]);
        mont_mul_matches_oracle::<4>(&wide, &mut rng);
    }

    #[test]
    fn round_trip_and_one() {
        let p = crate::primes::find_p0(135, 500).unwrap();
        let kern = Kernel::<3>::new(p.modulus());
        let mut rng = SplitMix64::new(7);
        for _ in 0..20 {
            let x = random_below(&mut rng, p.modulus());
            assert_eq!(kern.from_mont(&kern.to_mont(&x)), x);
        }
        assert_eq!(kern.from_mont(&kern.one_mont()), Natural::one());
    }

    #[test]
    fn pow_matches_modpow() {
        let p = Natural::from_u64(12289);
        let kern = Kernel::<1>::new(&p);
        let base = Natural::from_u64(11);
        let got = kern.from_mont(&kern.pow(&kern.to_mont(&base), 12288));
        assert_eq!(got, Natural::one()); // Fermat
        let got = kern.from_mont(&kern.pow(&kern.to_mont(&base), 5));
        assert_eq!(got, crate::primes::modpow(&base, &Natural::from_u64(5), &p));
    }

    #[test]
    #[ignore = "timing probe, run on demand with --ignored --nocapture"]
    fn butterfly_throughput() {
        let l = 1usize << 17;
        let p1 = crate::primes::FftPrime::new(20, 7).unwrap();
        let p3 = crate::primes::find_p0(135, 500).unwrap();
        let mut rng = SplitMix64::new(42);

        let kern = Kernel::<1>::new(p1.modulus());
        let root = crate::fp::root_of_unity(&p1, l as u64).unwrap();
        let root_m = kern.to_mont(root.value());
        let mut data: Vec<[u64; 1]> =
            (0..l).map(|_| kern.to_mont(&random_below(&mut rng, p1.modulus()))).collect();
        let start = std::time::Instant::now();
        for _ in 0..4 {
            kern.forward(&mut data, &root_m);
        }
        let per = start.elapsed().as_nanos() as f64 / (4.0 * (l as f64 / 2.0) * 17.0);
        println!("W=1: {per:.1} ns/butterfly");

        let kern = Kernel::<3>::new(p3.modulus());
        let root = crate::fp::root_of_unity(&p3, l as u64).unwrap();
        let root_m = kern.to_mont(root.value());
        let mut data: Vec<[u64; 3]> =
            (0..l).map(|_| kern.to_mont(&random_below(&mut rng, p3.modulus()))).collect();
        let start = std::time::Instant::now();
        for _ in 0..4 {
            kern.forward(&mut data, &root_m);
        }
        let per = start.elapsed().as_nanos() as f64 / (4.0 * (l as f64 / 2.0) * 17.0);
        println!("W=3: {per:.1} ns/butterfly");
    }

    #[test]
    fn l_inverse_is_inverse() {
        let p = crate::primes::find_p0(135, 500).unwrap();
        let kern = Kernel::<3>::new(p.modulus());
        for lg_l in [0usize, 1, 5, 17] {
            let l = 1usize << lg_l;
            let inv = kern.l_inverse_mont(l);
            let mut l_arr = [0u64; 3];
            l_arr[0] = l as u64;
            let l_mont = kern.mont_mul(&l_arr, &kern.r2);
            assert_eq!(kern.from_mont(&kern.mont_mul(&inv, &l_mont)), Natural::one());
        }
    }
}
