use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use quadlab_bench::workloads;
use quadlab_core::approximation::approximate;
use quadlab_core::classify::{classify_knot, ClassifyOptions};
use quadlab_core::quadrisecant::find_all_quadrisecants;

fn quadrisecants(c: &mut Criterion) {
    let mut g = c.benchmark_group("quadrisecants");
    for k in workloads() {
        g.bench_function(k.name(), |b| b.iter(|| find_all_quadrisecants(black_box(&k)).unwrap()));
    }
    g.finish();
}

fn approximation(c: &mut Criterion) {
    let mut g = c.benchmark_group("approximate");
    g.sample_size(20);
    for k in workloads() {
        g.bench_function(k.name(), |b| b.iter(|| approximate(black_box(&k)).unwrap()));
    }
    g.finish();
}

fn jones(c: &mut Criterion) {
    let mut g = c.benchmark_group("classify");
    g.sample_size(10);
    let opts = ClassifyOptions::default();
    for k in workloads() {
        g.bench_function(k.name(), |b| b.iter(|| classify_knot(black_box(&k), &opts).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, quadrisecants, approximation, jones);
criterion_main!(benches);
