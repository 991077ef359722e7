use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use addlin_core::addcode::DEFAULT_DISTANCE_BUDGET;
use addlin_core::equiv::{SMatrix, DEFAULT_SEARCH_BUDGET};
use addlin_core::{catalog, qc, test_linearity};

fn s_matrix(c: &mut Criterion) {
    let code = qc::build_qc_additive(&catalog::qc_63()).unwrap();
    c.bench_function("build S, n=63 k=10", |b| b.iter(|| SMatrix::build(black_box(&code)).unwrap()));
    let s = SMatrix::build(&code).unwrap();
    c.bench_function("nullity of S 1260x352", |b| b.iter(|| black_box(&s).nullity()));
}

fn linearity(c: &mut Criterion) {
    let c63 = qc::build_qc_additive(&catalog::qc_63()).unwrap();
    let c22 = qc::build_qc_additive(&catalog::qc_22()).unwrap();
    c.bench_function("test_linearity n=63", |b| {
        b.iter(|| test_linearity(black_box(&c63), DEFAULT_SEARCH_BUDGET).unwrap())
    });
    c.bench_function("test_linearity n=22 with search", |b| {
        b.iter(|| test_linearity(black_box(&c22), DEFAULT_SEARCH_BUDGET).unwrap())
    });
}

fn distance(c: &mut Criterion) {
    let c63 = qc::build_qc_additive(&catalog::qc_63()).unwrap();
    let c22 = qc::build_qc_additive(&catalog::qc_22()).unwrap();
    c.bench_function("min_distance k=10", |b| {
        b.iter(|| black_box(&c63).min_distance(DEFAULT_DISTANCE_BUDGET).unwrap())
    });
    let mut g = c.benchmark_group("slow");
    g.sample_size(10);
    g.bench_function("min_distance k=20", |b| {
        b.iter(|| black_box(&c22).min_distance(DEFAULT_DISTANCE_BUDGET).unwrap())
    });
    g.finish();
}

criterion_group!(benches, s_matrix, linearity, distance);
criterion_main!(benches);
