//! `fftmul`: batch frontend over the core library.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 computationally
//! infeasible parameters, 3 internal invariant failure. Hex I/O is lowercase
//! big-endian with no prefix; CSV ratio columns are exact integer fractions.
//! Timings go to stderr so piped stdout stays machine-readable.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use fftmul_core::bigint::Natural;
use fftmul_core::error::Error;
use fftmul_core::intmul::{self, MulEngine, PlanMode};
use fftmul_core::opcount;
use fftmul_core::primes;
use fftmul_core::rng::SplitMix64;
use fftmul_core::selftest;
use fftmul_core::transform::Profile;

#[derive(Parser)]
#[command(name = "fftmul", version, about = "Integer multiplication over FFT primes, plus the number-theoretic tooling around them")]
struct Cli {
    /// Seed for every randomized subcommand; fixed seed, fixed output.
    #[arg(long, global = true, default_value_t = 0x5eed)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Multiply two hex integers and print the hex product.
    Mul {
        u_hex: String,
        v_hex: String,
        /// Which multiplication path to run.
        #[arg(long, value_enum, default_value_t = Engine::Fft)]
        engine: Engine,
        /// Transform profile file (key=value lines) for --engine fft-recursive.
        #[arg(long)]
        profile: Option<PathBuf>,
    },
    /// Find multipliers a making a·2^m + 1 prime.
    FindPrime {
        /// The exponent m.
        #[arg(long)]
        m: usize,
        /// Print every a up to --a-max instead of the least one.
        #[arg(long)]
        list: bool,
        #[arg(long, default_value_t = 100_000)]
        a_max: u64,
    },
    /// Least primes in arithmetic progressions: P(q) for q in [2, q-max].
    ApScan {
        #[arg(long)]
        q_max: u64,
        /// Write CSV here instead of stdout.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Run the library's invariant suites.
    Selftest {
        #[arg(long, value_enum, default_value_t = LevelArg::Quick)]
        level: LevelArg,
        /// Corrupt one expectation in the named suite (test fixture).
        #[arg(long, hide = true)]
        inject_fault: Option<String>,
    },
    /// Time the multiplication engines and count field multiplications.
    Bench {
        /// Comma-separated operand sizes in bits.
        #[arg(long, default_value = "1024,4096,16384")]
        bits: String,
        /// Write CSV here instead of stdout.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Engine {
    /// Schoolbook reference.
    Oracle,
    /// Subquadratic splitting, no transforms.
    Karatsuba,
    /// Chunked convolution over p₀(m), iterative radix-2 kernel.
    Fft,
    /// Same plan evaluated through the recursive transform machinery.
    FftRecursive,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LevelArg {
    Quick,
    Full,
}

enum CliError {
    Lib(Error),
    Usage(String),
    Io(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Lib(e) => e.fmt(f),
            CliError::Usage(s) | CliError::Io(s) => write!(f, "{s}"),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Lib(Error::ParameterInfeasible(_))
            | CliError::Lib(Error::LiftAmbiguous { .. })
            | CliError::Lib(Error::PrimeNotFound { .. }) => 2,
            _ => 1,
        }
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    match std::panic::catch_unwind(|| run(cli)) {
        Ok(Ok(())) => {}
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
        Err(_) => {
            eprintln!("error: internal invariant failure");
            std::process::exit(3);
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.cmd {
        Cmd::Mul { u_hex, v_hex, engine, profile } => cmd_mul(&u_hex, &v_hex, engine, profile),
        Cmd::FindPrime { m, list, a_max } => cmd_find_prime(m, list, a_max),
        Cmd::ApScan { q_max, csv } => cmd_ap_scan(q_max, csv),
        Cmd::Selftest { level, inject_fault } => cmd_selftest(level, cli.seed, inject_fault),
        Cmd::Bench { bits, csv } => cmd_bench(&bits, csv, cli.seed),
    }
}

fn cmd_mul(
    u_hex: &str,
    v_hex: &str,
    engine: Engine,
    profile_path: Option<PathBuf>,
) -> Result<(), CliError> {
    let u = Natural::from_hex(u_hex)?;
    let v = Natural::from_hex(v_hex)?;
    let start = Instant::now();
    let product = if u.is_zero() || v.is_zero() {
        Natural::zero()
    } else {
        match engine {
            Engine::Oracle => u.mul_oracle(&v),
            Engine::Karatsuba => u.mul_karatsuba(&v),
            Engine::Fft | Engine::FftRecursive => {
                let n = u.bit_length().max(v.bit_length()).max(2);
                let plan = intmul::make_plan(n, PlanMode::Practical)?;
                let mul_engine = match engine {
                    Engine::Fft => MulEngine::Direct,
                    _ => MulEngine::Recursive(load_profile(profile_path.as_deref())?),
                };
                intmul::multiply_with_plan(&u, &v, &plan, &mul_engine)?
            }
        }
    };
    eprintln!("mul: {:.3} ms", start.elapsed().as_secs_f64() * 1e3);
    println!("{}", product.to_hex());
    Ok(())
}

fn load_profile(path: Option<&std::path::Path>) -> Result<Profile, Error> {
    match path {
        None => Ok(Profile::test_scale(1)),
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| Error::ProfileParse(format!("{}: {e}", p.display())))?;
            Profile::parse(&text)
        }
    }
}

fn cmd_find_prime(m: usize, list: bool, a_max: u64) -> Result<(), CliError> {
    if m < 1 {
        return Err(CliError::Usage("--m must be at least 1".into()));
    }
    let start = Instant::now();
    if list {
        let all = primes::find_all_a(m, a_max);
        eprintln!(
            "find-prime: {} multipliers for m = {m} with a <= {a_max} in {:.3} s",
            all.len(),
            start.elapsed().as_secs_f64()
        );
        for a in all {
            println!("{a}");
        }
    } else {
        let p = primes::find_p0(m, a_max)?;
        eprintln!("find-prime: {:.3} s", start.elapsed().as_secs_f64());
        println!("{}", p.multiplier());
    }
    Ok(())
}

fn cmd_ap_scan(q_max: u64, csv: Option<PathBuf>) -> Result<(), CliError> {
    if q_max < 2 {
        return Err(CliError::Usage("--q-max must be at least 2".into()));
    }
    let start = Instant::now();
    let records = primes::ap_scan(2, q_max)?;
    let mut out = open_output(csv.as_deref())?;
    writeln!(out, "{}", primes::ApRecord::CSV_HEADER).map_err(io_err)?;
    for r in &records {
        writeln!(out, "{}", r.csv_row()).map_err(io_err)?;
    }
    out.flush().map_err(io_err)?;
    // Exact-fraction argmax: a/b < c/d iff a·d < c·b.
    let best = records
        .iter()
        .max_by(|x, y| {
            (x.ratio_num as u128 * y.ratio_den as u128)
                .cmp(&(y.ratio_num as u128 * x.ratio_den as u128))
        })
        .expect("q_max >= 2 yields at least one record");
    eprintln!(
        "ap-scan: {} rows in {:.3} s; max ratio {}/{} at q = {}{}",
        records.len(),
        start.elapsed().as_secs_f64(),
        best.ratio_num,
        best.ratio_den,
        best.q,
        if best.q == 2 { " (the conjectured maximum)" } else { " (NOT q = 2)" },
    );
    Ok(())
}

fn cmd_selftest(level: LevelArg, seed: u64, inject_fault: Option<String>) -> Result<(), CliError> {
    let config = selftest::Config {
        level: match level {
            LevelArg::Quick => selftest::Level::Quick,
            LevelArg::Full => selftest::Level::Full,
        },
        seed,
        inject_fault,
    };
    let start = Instant::now();
    let reports = selftest::run(&config);
    let mut all_ok = true;
    for r in &reports {
        if r.passed() {
            println!("suite {}: ok ({} checks)", r.name, r.checks);
        } else {
            all_ok = false;
            println!("suite {}: FAILED ({} checks)", r.name, r.checks);
            for f in &r.failures {
                println!("  - {f}");
            }
        }
    }
    eprintln!("selftest: {:.3} s", start.elapsed().as_secs_f64());
    if all_ok {
        println!("selftest: PASS");
        Ok(())
    } else {
        println!("selftest: FAIL");
        // An invariant suite reporting red is an internal failure, not usage.
        std::process::exit(3);
    }
}

fn cmd_bench(bits_list: &str, csv: Option<PathBuf>, seed: u64) -> Result<(), CliError> {
    let sizes: Vec<usize> = bits_list
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| CliError::Usage(format!("bad --bits entry {s:?}")))
        })
        .collect::<Result<_, _>>()?;
    if sizes.iter().any(|&b| b < 2) {
        return Err(CliError::Usage("--bits entries must be ≥ 2".into()));
    }
    let mut rng = SplitMix64::new(seed);
    let mut out = open_output(csv.as_deref())?;
    writeln!(out, "bits,engine,wall_ns,fp_mults").map_err(io_err)?;
    for &bits in &sizes {
        let u = random_natural(bits, &mut rng);
        let v = random_natural(bits, &mut rng);
        let plan = intmul::make_plan(bits, PlanMode::Practical)?;
        let fft = |u: &Natural, v: &Natural| {
            intmul::multiply_with_plan(u, v, &plan, &MulEngine::Direct)
                .expect("bench operands fit their plan")
        };
        let runs: [(&str, Box<dyn Fn(&Natural, &Natural) -> Natural>); 3] = [
            ("oracle", Box::new(|u, v| u.mul_oracle(v))),
            ("karatsuba", Box::new(|u, v| u.mul_karatsuba(v))),
            ("fft", Box::new(fft)),
        ];
        let mut products = Vec::new();
        for (name, f) in &runs {
            opcount::reset();
            let start = Instant::now();
            let p = f(&u, &v);
            let wall = start.elapsed().as_nanos();
            let mults = opcount::snapshot().fp_mults;
            writeln!(out, "{bits},{name},{wall},{mults}").map_err(io_err)?;
            eprintln!("bench {bits} bits, {name}: {:.3} ms, {mults} F_p mults", wall as f64 / 1e6);
            products.push(p);
        }
        assert!(products.windows(2).all(|w| w[0] == w[1]), "engines disagree at {bits} bits");
    }
    out.flush().map_err(io_err)
}

fn random_natural(bits: usize, rng: &mut SplitMix64) -> Natural {
    let limbs: Vec<u64> = (0..bits.div_ceil(64)).map(|_| rng.next_u64()).collect();
    let x = Natural::from_limbs(&limbs);
    let excess = x.bit_length().saturating_sub(bits);
    x.shr(excess)
}

fn open_output(path: Option<&std::path::Path>) -> Result<Box<dyn Write>, CliError> {
    match path {
        None => Ok(Box::new(std::io::stdout())),
        Some(p) => {
            let f = File::create(p)
                .map_err(|e| CliError::Io(format!("cannot write {}: {e}", p.display())))?;
            Ok(Box::new(BufWriter::new(f)))
        }
    }
}

fn io_err(e: std::io::Error) -> CliError {
    CliError::Io(format!("I/O failure: {e}"))
}
