use bejaia_core::{
    circulant_spectrum, simulate_fpt, two_point_resistance, wu_resistance, CirculantGraph,
    SequenceContext, WalkConfig,
};
use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

fn sequences(c: &mut Criterion) {
    let ctx = SequenceContext::new(99).unwrap();
    c.bench_function("bejaia_recursion_n99_l200", |b| {
        b.iter(|| ctx.bejaia(black_box(200)))
    });
    c.bench_function("bejaia_binet_n99_l200", |b| {
        b.iter(|| ctx.binet_pair(black_box(200)))
    });
}

fn resistance(c: &mut Criterion) {
    c.bench_function("exact_resistance_n101_l50", |b| {
        b.iter(|| two_point_resistance(black_box(101), black_box(50)).unwrap())
    });
    let g = CirculantGraph::complete_minus_diameters(101).unwrap();
    c.bench_function("spectrum_n101", |b| {
        b.iter(|| circulant_spectrum(black_box(&g)))
    });
    c.bench_function("wu_resistance_n101", |b| {
        b.iter(|| wu_resistance(black_box(&g), 50).unwrap())
    });
}

fn monte_carlo(c: &mut Criterion) {
    let g = CirculantGraph::complete_minus_diameters(7).unwrap();
    let cfg = WalkConfig::for_order(7, 10_000, 42).unwrap();
    c.bench_function("simulate_fpt_n7_10k", |b| {
        b.iter(|| simulate_fpt(&g, 0, 1, black_box(&cfg)).unwrap())
    });
}

criterion_group!(benches, sequences, resistance, monte_carlo);
criterion_main!(benches);
