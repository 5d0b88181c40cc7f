//! Wall time of the three multiplication engines at fixed operand sizes,
//! plus the dispatching front door across its karatsuba/fft threshold.

use std::time::Duration;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use fftmul_bench::operand;
use fftmul_core::intmul::{self, make_plan, multiply_with_plan, MulEngine, PlanMode};

fn engines(c: &mut Criterion) {
    let mut group = c.benchmark_group("multiply");
    group.sample_size(10).measurement_time(Duration::from_secs(3));
    for &bits in &[1usize << 10, 1 << 12, 1 << 14] {
        let u = operand(bits, 0xb0b1 ^ bits as u64);
        let v = operand(bits, 0xcafe ^ bits as u64);
        group.bench_with_input(BenchmarkId::new("oracle", bits), &bits, |b, _| {
            b.iter(|| u.mul_oracle(&v))
        });
        group.bench_with_input(BenchmarkId::new("karatsuba", bits), &bits, |b, _| {
            b.iter(|| u.mul_karatsuba(&v))
        });
        let plan = make_plan(bits, PlanMode::Practical).unwrap();
        group.bench_with_input(BenchmarkId::new("fft", bits), &bits, |b, _| {
            b.iter(|| multiply_with_plan(&u, &v, &plan, &MulEngine::Direct).unwrap())
        });
    }
    group.finish();

    // multiply() itself, sized on both flanks of FFT_THRESHOLD_BITS.
    let mut group = c.benchmark_group("multiply_auto");
    group.sample_size(10).measurement_time(Duration::from_secs(3));
    for &bits in &[1usize << 14, 1 << 15, 1 << 16] {
        let u = operand(bits, 0x0dd1 ^ bits as u64);
        let v = operand(bits, 0x0dd2 ^ bits as u64);
        group.bench_with_input(BenchmarkId::new("multiply", bits), &bits, |b, _| {
            b.iter(|| intmul::multiply(&u, &v))
        });
    }
    group.finish();
}

criterion_group!(benches, engines);
criterion_main!(benches);
