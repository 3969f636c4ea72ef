use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use domatic_bench::weighted_grid;
use domatic_core::{min_capacity_separator, pack_capacitated, primal_dual_ds, solve_cds_lp, Graph, NodeWeights};

fn primal_dual(c: &mut Criterion) {
    let mut group = c.benchmark_group("primal_dual_ds");
    for side in [4, 6, 8] {
        let (g, w) = weighted_grid(side, side);
        group.bench_with_input(
            BenchmarkId::from_parameter(format!("{side}x{side}")),
            &(g, w),
            |b, (g, w)| b.iter(|| primal_dual_ds(black_box(g), black_box(w)).unwrap()),
        );
    }
    group.finish();
}

fn separator(c: &mut Criterion) {
    let mut group = c.benchmark_group("min_capacity_separator");
    for side in [4, 6] {
        let (g, w) = weighted_grid(side, side);
        group.bench_with_input(
            BenchmarkId::from_parameter(format!("{side}x{side}")),
            &(g, w),
            |b, (g, w)| b.iter(|| min_capacity_separator(black_box(g), black_box(w)).unwrap()),
        );
    }
    group.finish();
}

fn cds_lp(c: &mut Criterion) {
    let (g, w) = weighted_grid(3, 3);
    c.bench_function("solve_cds_lp/3x3", |b| {
        b.iter(|| solve_cds_lp(black_box(&g), black_box(&w)).unwrap())
    });
}

fn packing(c: &mut Criterion) {
    let mut group = c.benchmark_group("pack_capacitated");
    group.sample_size(10);
    for n in [5, 7] {
        let g = Graph::cycle(n);
        let cap = NodeWeights::from_ints(&vec![1; n]);
        group.bench_with_input(BenchmarkId::new("cycle", n), &(g, cap), |b, (g, cap)| {
            b.iter(|| pack_capacitated(black_box(g), black_box(cap)).unwrap())
        });
    }
    let (g, cap) = weighted_grid(2, 3);
    group.bench_function("grid/2x3", |b| {
        b.iter(|| pack_capacitated(black_box(&g), black_box(&cap)).unwrap())
    });
    group.finish();
}

criterion_group!(benches, primal_dual, separator, cds_lp, packing);
criterion_main!(benches);
