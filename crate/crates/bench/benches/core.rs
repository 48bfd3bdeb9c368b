use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use stuffle_core::algebra::stuffle_power;
use stuffle_core::numerics::{eval_euler_sum, eval_harmonic_sum, EvalConfig};
use stuffle_core::{expand, HarmonicSumSpec, Index, Reducer, SeqComb, Sequence};

fn stuffle_powers(c: &mut Criterion) {
    let mut group = c.benchmark_group("stuffle_power");
    for k in [4u32, 6, 8] {
        let base = SeqComb::single(Sequence::new(vec![Index::barred(1)]));
        group.bench_with_input(BenchmarkId::from_parameter(k), &k, |b, &k| {
            b.iter(|| stuffle_power(black_box(&base), k))
        });
    }
    group.finish();
}

fn expansions(c: &mut Criterion) {
    let specs = [
        HarmonicSumSpec::from_values(2, &[1, 1, 1, 1]).unwrap(),
        HarmonicSumSpec::from_values(-3, &[-1, 2, -1, 1, 1]).unwrap(),
    ];
    for spec in specs {
        c.bench_function(&format!("expand {spec}"), |b| b.iter(|| expand(black_box(&spec))));
    }
}

fn euler_sums(c: &mut Criterion) {
    let mut group = c.benchmark_group("eval_euler_sum");
    for tol in [1e-8, 1e-16, 1e-24] {
        let cfg = EvalConfig::with_tolerance(tol);
        let s = Sequence::from_values(&[-2, 1, -1]).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(tol), &cfg, |b, cfg| {
            b.iter(|| eval_euler_sum(black_box(&s), cfg).unwrap())
        });
    }
    group.finish();
}

fn harmonic_sums(c: &mut Criterion) {
    let mut group = c.benchmark_group("eval_harmonic_sum");
    group.sample_size(20);
    for tol in [1e-8, 1e-16, 1e-24] {
        let cfg = EvalConfig::with_tolerance(tol);
        let spec = HarmonicSumSpec::from_values(2, &[1, 1, 1]).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(tol), &cfg, |b, cfg| {
            b.iter(|| eval_harmonic_sum(black_box(&spec), cfg).unwrap())
        });
    }
    group.finish();
}

fn reduction(c: &mut Criterion) {
    let mut group = c.benchmark_group("solve");
    group.sample_size(10);
    for (w, level) in [(6u32, 1u8), (7, 1), (3, 2)] {
        group.bench_function(format!("w{w} level{level}"), |b| {
            b.iter(|| Reducer::new().solve(w, level).unwrap().values.len())
        });
    }
    group.finish();
}

criterion_group!(benches, stuffle_powers, expansions, euler_sums, harmonic_sums, reduction);
criterion_main!(benches);
