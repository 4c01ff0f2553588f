use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use convspace::verify::{agree_exhaustive, agree_sampled, run_suite, Execution, PropertyId, SuiteBounds};

const MODES: [Execution; 2] = [Execution::Sequential, Execution::Parallel];

fn exhaustive_suite(c: &mut Criterion) {
    let mut g = c.benchmark_group("suite_exhaustive_n3");
    g.sample_size(10);
    for mode in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(mode), &mode, |b, &mode| {
            b.iter(|| run_suite(SuiteBounds::exhaustive(3), PropertyId::ALL, mode).unwrap())
        });
    }
    g.finish();
}

fn sampled_suite(c: &mut Criterion) {
    let bounds = SuiteBounds { exhaustive_n: 0, sample_n: 8, sample_count: 200, seed: 7 };
    let mut g = c.benchmark_group("suite_sampled_n8_x200");
    g.sample_size(10);
    for mode in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(mode), &mode, |b, &mode| {
            b.iter(|| run_suite(bounds, PropertyId::ALL, mode).unwrap())
        });
    }
    g.finish();
}

fn oracle_agreement(c: &mut Criterion) {
    let mut g = c.benchmark_group("agreement");
    g.sample_size(10);
    for mode in MODES {
        g.bench_with_input(BenchmarkId::new("exhaustive_n3", mode), &mode, |b, &mode| {
            b.iter(|| agree_exhaustive(3, mode).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("sampled_x500", mode), &mode, |b, &mode| {
            b.iter(|| agree_sampled(500, 7, mode))
        });
    }
    g.finish();
}

criterion_group!(benches, exhaustive_suite, sampled_suite, oracle_agreement);
criterion_main!(benches);
