use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use groupdeg::{approximate, log_divergence_partial, ExactRational, DEFAULT_PRIME_BOUND};

fn greedy(c: &mut Criterion) {
    let eps: ExactRational = "1/1000".parse().unwrap();
    let mut group = c.benchmark_group("approximate");
    group.sample_size(10);
    for target in ["0.9", "0.5", "0.3", "0.2"] {
        let t: ExactRational = target.parse().unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(target), &t, |b, t| {
            b.iter(|| approximate(t, &eps, DEFAULT_PRIME_BOUND).unwrap())
        });
    }
    group.finish();
}

fn divergence(c: &mut Criterion) {
    c.bench_function("log_divergence_partial/1000", |b| {
        b.iter(|| log_divergence_partial(1000).unwrap())
    });
}

criterion_group!(benches, greedy, divergence);
criterion_main!(benches);
