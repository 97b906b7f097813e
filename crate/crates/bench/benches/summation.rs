use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use gsum_core::reference::{coth_closed_form, hl_oracle, partial_sums_g, richardson};
use gsum_core::{adaptive_sum, build_rule, gauss_sum, Side, Summand};

fn bench_gauss_sum(c: &mut Criterion) {
    let mut group = c.benchmark_group("gauss_sum/hardy_littlewood");
    for n in [8usize, 32, 128] {
        let rule = build_rule(n).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &rule, |b, rule| {
            let s = Summand::new(Side::PositiveHalf, "sin(40/k)/k", |k: f64| (40.0 / k).sin() / k);
            b.iter(|| gauss_sum(black_box(rule), &s).unwrap());
        });
    }
    group.finish();
}

fn bench_adaptive(c: &mut Criterion) {
    c.bench_function("adaptive_sum/lorentzian_a10", |b| {
        b.iter(|| {
            let s = Summand::new(Side::TwoSidedNonzero, "1/(100+k^2)", |k| 1.0 / (100.0 + k * k));
            adaptive_sum(black_box(&s), 1e-12, 64).unwrap()
        });
    });
}

fn bench_references(c: &mut Criterion) {
    let mut group = c.benchmark_group("reference");
    group.sample_size(20);
    group.bench_function("hl_oracle/x40", |b| {
        b.iter(|| hl_oracle(black_box(40.0), 1e-13).unwrap());
    });
    group.bench_function("richardson/order4_n1000", |b| {
        let wanted: Vec<usize> = (1000..=1004).collect();
        let seq = partial_sums_g(10.0, &wanted).unwrap();
        b.iter(|| richardson(black_box(&seq), 4, 1000).unwrap());
    });
    group.bench_function("coth_closed_form", |b| {
        b.iter(|| coth_closed_form(black_box(17.0)).unwrap());
    });
    group.finish();
}

criterion_group!(benches, bench_gauss_sum, bench_adaptive, bench_references);
criterion_main!(benches);
