use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use novikov_bench::{conway_complex, random_matrix};
use novikov_core::laurent::rank_mod;
use novikov_core::novikov::{compute_profile, unit_pivot_reduce};

fn determinants(c: &mut Criterion) {
    let mut group = c.benchmark_group("det");
    for n in [4, 8, 12] {
        let m = random_matrix(n as u64, n, 4);
        group.bench_with_input(BenchmarkId::new("interpolation", n), &m, |b, m| {
            b.iter(|| black_box(m).det().unwrap())
        });
        group.bench_with_input(BenchmarkId::new("symbolic", n), &m, |b, m| {
            b.iter(|| black_box(m).det_symbolic().unwrap())
        });
    }
    group.finish();
}

fn conway(c: &mut Criterion) {
    let complex = conway_complex();
    let keep: Vec<usize> = (0..10).collect();
    let minor = complex.minor(10, &keep);
    let presentation = complex.homology_presentation(10);
    let mut group = c.benchmark_group("conway");
    group.sample_size(10);
    group.bench_function("minor_det", |b| b.iter(|| black_box(&minor).det().unwrap()));
    group.bench_function("rank_mod_5", |b| b.iter(|| rank_mod(black_box(&presentation), 5).unwrap()));
    group.bench_function("unit_pivot_reduce", |b| b.iter(|| unit_pivot_reduce(black_box(&presentation))));
    group.bench_function("profile", |b| b.iter(|| compute_profile(black_box(&complex))));
    group.finish();
}

criterion_group!(benches, determinants, conway);
criterion_main!(benches);
