use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use novikov_core::fixtures;
use novikov_core::reps::{search_permutation_reps, CycleType};

fn search(c: &mut Criterion) {
    let conway = fixtures::conway();
    let kt = fixtures::kinoshita_terasaka();
    let three_cycles = CycleType::parse("3cycle", 5).unwrap();
    let mut group = c.benchmark_group("search");
    group.sample_size(10);
    group.bench_function("conway_s5_3cycles", |b| {
        b.iter(|| search_permutation_reps(black_box(&conway), 5, Some(&three_cycles), 10))
    });
    group.bench_function("kinoshita_terasaka_s5_all", |b| {
        b.iter(|| search_permutation_reps(black_box(&kt), 5, None, 100))
    });
    group.finish();
}

criterion_group!(benches, search);
criterion_main!(benches);
