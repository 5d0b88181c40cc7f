//! Runtime self-checks, one suite per module, driven by the CLI.
//!
//! Each suite re-runs a slice of the module's invariants against its naive
//! oracle with seeded inputs, so a given seed produces the same report every
//! time. Fault injection corrupts one expected value inside the named suite —
//! not the library — to prove failures actually propagate to the report.

use crate::bigint::Natural;
use crate::bivariate::{self, ChunkParams};
use crate::bluestein::{self, ChirpPair};
use crate::dft::{cyclic_convolve_naive, dft_naive, dft_radix2, PolyModXL};
use crate::fp::{root_of_unity, FieldElement};
use crate::intmul::{self, MulEngine, PlanMode};
use crate::primes::{self, FftPrime};
use crate::rng::SplitMix64;
use crate::transform::{self, Profile};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    Quick,
    Full,
}

#[derive(Clone, Debug)]
pub struct Config {
    pub level: Level,
    pub seed: u64,
    /// Name of the suite whose expectations get corrupted, if any.
    pub inject_fault: Option<String>,
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub name: &'static str,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Suite {
    name: &'static str,
    checks: usize,
    failures: Vec<String>,
    fault: bool,
}

impl Suite {
    fn new(name: &'static str, fault: bool) -> Self {
        Suite { name, checks: 0, failures: Vec::new(), fault }
    }

    /// One check: `got` must equal `want`, except a fault inverts the
    /// suite's first expectation so the harness provably reports mismatches.
    fn expect_eq<T: PartialEq + std::fmt::Debug>(&mut self, what: &str, got: T, want: T) {
        self.checks += 1;
        if self.fault && self.checks == 1 {
            if got == want {
                self.failures
                    .push(format!("{what}: injected fault (expectation inverted)"));
            }
        } else if got != want {
            self.failures.push(format!("{what}: got {got:?}, want {want:?}"));
        }
    }

    fn expect(&mut self, what: &str, ok: bool) {
        self.checks += 1;
        let (ok, what) = if self.fault && self.checks == 1 {
            (!ok, format!("{what}: injected fault (expectation inverted)"))
        } else {
            (ok, what.to_string())
        };
        if !ok {
            self.failures.push(what);
        }
    }

    fn finish(self) -> SuiteReport {
        SuiteReport { name: self.name, checks: self.checks, failures: self.failures }
    }
}

pub const SUITE_NAMES: &[&str] = &[
    "bigint", "primes", "fp", "dft", "bluestein", "bivariate", "transform", "intmul",
];

/// Runs every suite. Report order and contents depend only on the config.
pub fn run(config: &Config) -> Vec<SuiteReport> {
    let fault_for = |name: &str| config.inject_fault.as_deref() == Some(name);
    vec![
        suite_bigint(config, fault_for("bigint")),
        suite_primes(config, fault_for("primes")),
        suite_fp(config, fault_for("fp")),
        suite_dft(config, fault_for("dft")),
        suite_bluestein(config, fault_for("bluestein")),
        suite_bivariate(config, fault_for("bivariate")),
        suite_transform(config, fault_for("transform")),
        suite_intmul(config, fault_for("intmul")),
    ]
}

fn rng_for(config: &Config, salt: u64) -> SplitMix64 {
    SplitMix64::new(config.seed ^ salt)
}

fn random_natural(bits: usize, rng: &mut SplitMix64) -> Natural {
    let limbs: Vec<u64> = (0..bits.div_ceil(64)).map(|_| rng.next_u64()).collect();
    let x = Natural::from_limbs(&limbs);
    let excess = x.bit_length().saturating_sub(bits);
    x.shr(excess)
}

fn random_poly<'p>(ctx: &'p FftPrime, l: usize, rng: &mut SplitMix64) -> PolyModXL<'p> {
    PolyModXL::new((0..l).map(|_| FieldElement::from_u64(ctx, rng.next_u64())).collect())
        .expect("power-of-two length")
}

fn suite_bigint(config: &Config, fault: bool) -> SuiteReport {
    let mut s = Suite::new("bigint", fault);
    let mut rng = rng_for(config, 0xb161);
    let reps = if config.level == Level::Full { 200 } else { 40 };
    for _ in 0..reps {
        let a = random_natural(512, &mut rng);
        let b = random_natural(300, &mut rng);
        s.expect_eq("karatsuba vs schoolbook", a.mul_karatsuba(&b), a.mul_oracle(&b));
        let nonzero = &b + &Natural::one();
        let (q, r) = a.divmod(&nonzero);
        s.expect_eq("divmod reconstruction", &q.mul_oracle(&nonzero) + &r, a.clone());
        s.expect("remainder below divisor", r < nonzero);
    }
    let x = random_natural(1000, &mut rng);
    s.expect_eq("hex round trip", Natural::from_hex(&x.to_hex()).unwrap(), x);
    s.finish()
}

fn suite_primes(config: &Config, fault: bool) -> SuiteReport {
    let mut s = Suite::new("primes", fault);
    s.expect_eq("p0(4)", primes::find_p0(4, 100).unwrap().multiplier(), 1);
    s.expect_eq("p0(12)", primes::find_p0(12, 100).unwrap().multiplier(), 3);
    s.expect_eq("p0(20)", primes::find_p0(20, 100).unwrap().multiplier(), 7);
    let rec = primes::p_of_q(2).unwrap();
    s.expect_eq("P(2)", rec.least_prime, 3);
    s.expect_eq("ratio at q=2", (rec.ratio_num, rec.ratio_den), (3, 2));
    let bound = if config.level == Level::Full { 20_000 } else { 2_000 };
    let mut count = 0;
    for n in 2..bound {
        if primes::is_prime(&Natural::from_u64(n)) {
            count += 1;
        }
    }
    // π(2000) = 303, π(20000) = 2262.
    s.expect_eq("prime count", count, if bound == 20_000 { 2262 } else { 303 });
    s.finish()
}

fn suite_fp(config: &Config, fault: bool) -> SuiteReport {
    let mut s = Suite::new("fp", fault);
    let p = FftPrime::new(12, 3).unwrap();
    let mut rng = rng_for(config, 0xf9);
    let reps = if config.level == Level::Full { 500 } else { 100 };
    for _ in 0..reps {
        let x = FieldElement::from_u64(&p, rng.next_u64() | 1);
        s.expect_eq("x · x⁻¹", x.mul(&x.inv()), FieldElement::from_u64(&p, 1));
        let sq = x.square();
        let r = sq.sqrt().expect("squares have roots");
        s.expect("sqrt inverts square", r == x || r == x.neg());
    }
    let zeta = root_of_unity(&p, 4096).unwrap();
    s.expect_eq("root order", zeta.pow_u64(4096), FieldElement::from_u64(&p, 1));
    s.expect("primitive root", zeta.pow_u64(2048) != FieldElement::from_u64(&p, 1));
    s.finish()
}

fn suite_dft(config: &Config, fault: bool) -> SuiteReport {
    let mut s = Suite::new("dft", fault);
    let p = FftPrime::new(12, 3).unwrap();
    let mut rng = rng_for(config, 0xd1);
    let lengths: &[usize] = if config.level == Level::Full {
        &[1, 2, 8, 64, 256, 1024]
    } else {
        &[1, 8, 64]
    };
    for &l in lengths {
        let zeta = root_of_unity(&p, l as u64).unwrap();
        let f = random_poly(&p, l, &mut rng);
        s.expect_eq(
            &format!("radix-2 vs naive at L={l}"),
            dft_radix2(&f, &zeta).unwrap(),
            dft_naive(&f, &zeta).unwrap(),
        );
    }
    s.finish()
}

fn suite_bluestein(config: &Config, fault: bool) -> SuiteReport {
    let mut s = Suite::new("bluestein", fault);
    let p = FftPrime::new(12, 3).unwrap();
    let mut rng = rng_for(config, 0xb1);
    let sizes: &[usize] = if config.level == Level::Full {
        &[1, 2, 4, 8, 16, 32, 64]
    } else {
        &[2, 8, 16]
    };
    for &short in sizes {
        let zeta = root_of_unity(&p, (4 * short).max(2) as u64).unwrap();
        let chirp = ChirpPair::derive(&zeta, 4 * short.max(1), short).unwrap();
        let omega = zeta.pow_u64(4);
        let f = random_poly(&p, short, &mut rng);
        let naive_conv = |a, b| {
            let (a, b): (PolyModXL, PolyModXL) = (a, b);
            PolyModXL::new(cyclic_convolve_naive(a.coeffs(), b.coeffs()))
        };
        s.expect_eq(
            &format!("chirp DFT vs naive at S={short}"),
            bluestein::short_dft_via_convolution(&f, &chirp, &naive_conv).unwrap(),
            dft_naive(&f, &omega).unwrap(),
        );
    }
    s.finish()
}

fn suite_bivariate(config: &Config, fault: bool) -> SuiteReport {
    let mut s = Suite::new("bivariate", fault);
    let p = FftPrime::new(4, 1).unwrap();
    let mut rng = rng_for(config, 0xb2);
    let reps = if config.level == Level::Full { 200 } else { 50 };
    let params = ChunkParams::new(&p, 4, 2).unwrap();
    for _ in 0..reps {
        let f = random_poly(&p, 4, &mut rng);
        let g = random_poly(&p, 4, &mut rng);
        let h = bivariate::mul_bivariate_integer(
            &bivariate::split(&f, &params),
            &bivariate::split(&g, &params),
            &params,
        );
        let got = bivariate::recombine(&h, &params, &p);
        let want = PolyModXL::new(cyclic_convolve_naive(f.coeffs(), g.coeffs())).unwrap();
        s.expect_eq("split/multiply/recombine vs convolution", got, want);
    }
    // The worked scalar example: 13·5 ≡ 14 (mod 17) with k = 2 chunks.
    let params1 = ChunkParams::new(&p, 1, 2).unwrap();
    let f = PolyModXL::from_u64s(&p, &[13]).unwrap();
    let g = PolyModXL::from_u64s(&p, &[5]).unwrap();
    let h = bivariate::mul_bivariate_integer(
        &bivariate::split(&f, &params1),
        &bivariate::split(&g, &params1),
        &params1,
    );
    let got = bivariate::recombine(&h, &params1, &p);
    s.expect_eq("13·5 mod 17", got, PolyModXL::from_u64s(&p, &[14]).unwrap());
    s.finish()
}

fn suite_transform(config: &Config, fault: bool) -> SuiteReport {
    let mut s = Suite::new("transform", fault);
    let p = FftPrime::new(12, 3).unwrap();
    let mut rng = rng_for(config, 0x77);
    let cases: &[(usize, u32)] = if config.level == Level::Full {
        &[(16, 1), (64, 1), (256, 2), (1024, 2)]
    } else {
        &[(16, 1), (64, 1)]
    };
    for &(l, depth) in cases {
        let zeta = root_of_unity(&p, l as u64).unwrap();
        let f = random_poly(&p, l, &mut rng);
        s.expect_eq(
            &format!("recursive transform vs naive at L={l}, depth={depth}"),
            transform::transform(&f, &zeta, &Profile::test_scale(depth)).unwrap(),
            dft_naive(&f, &zeta).unwrap(),
        );
    }
    s.finish()
}

fn suite_intmul(config: &Config, fault: bool) -> SuiteReport {
    let mut s = Suite::new("intmul", fault);
    let mut rng = rng_for(config, 0x1a);
    let plan = intmul::make_plan(1 << 10, PlanMode::Practical).unwrap();
    let reps = if config.level == Level::Full { 50 } else { 10 };
    for _ in 0..reps {
        let u = random_natural(1 << 10, &mut rng);
        let v = random_natural(1 << 10, &mut rng);
        let got = intmul::multiply_with_plan(&u, &v, &plan, &MulEngine::Direct).unwrap();
        s.expect_eq("forced pipeline vs schoolbook", got, u.mul_oracle(&v));
    }
    if config.level == Level::Full {
        let big = intmul::make_plan(1 << 15, PlanMode::Practical).unwrap();
        for _ in 0..3 {
            let u = random_natural(1 << 15, &mut rng);
            let v = random_natural(1 << 15, &mut rng);
            let got = intmul::multiply_with_plan(&u, &v, &big, &MulEngine::Direct).unwrap();
            s.expect_eq("large pipeline vs schoolbook", got, u.mul_oracle(&v));
        }
    }
    s.expect_eq(
        "multiply entry point",
        intmul::multiply(&Natural::from_u64(1 << 20), &Natural::from_u64(3)),
        Natural::from_u64(3 << 20),
    );
    s.finish()
}
