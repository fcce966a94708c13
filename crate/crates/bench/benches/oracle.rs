use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use groupdeg::{census_with_cap, MAX_GROUP_ORDER};
use groupdeg_bench::{build, ORACLE_SPECS};

fn census_benches(c: &mut Criterion) {
    let mut group = c.benchmark_group("census");
    group.sample_size(10);
    for spec in ORACLE_SPECS {
        let g = build(spec);
        group.bench_with_input(BenchmarkId::from_parameter(spec), &g, |b, g| {
            b.iter(|| census_with_cap(g, MAX_GROUP_ORDER).unwrap())
        });
    }
    group.finish();
}

fn construction_benches(c: &mut Criterion) {
    let mut group = c.benchmark_group("construct");
    for spec in ["D(256)", "M(7)", "Ham(n=2;C3)"] {
        group.bench_function(spec, |b| b.iter(|| build(spec)));
    }
    group.finish();
}

criterion_group!(benches, census_benches, construction_benches);
criterion_main!(benches);
