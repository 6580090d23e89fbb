//! Solver throughput: growth in `n` for `k = d`, the `n^{k−d}` fan-out, the
//! digraph DP and the exhaustive oracle.

use std::hint::black_box;

use contractvc::generators::random_connected_graph;
use contractvc::oracles::oracle_contraction_vc;
use contractvc::{solve, CvcInstance};
use contractvc_bench::{instance, no_seed};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn k_equals_d(c: &mut Criterion) {
    let mut group = c.benchmark_group("k_eq_d_4");
    for n in [50, 100, 200] {
        let inst = instance(n, 4, 0, 7);
        group.bench_with_input(BenchmarkId::from_parameter(n), &inst, |b, inst| b.iter(|| solve(black_box(inst))));
    }
    group.finish();
}

fn fan_out(c: &mut Criterion) {
    let mut group = c.benchmark_group("gap_n60_d4");
    group.sample_size(20);
    let seed = no_seed(60, 4, 0);
    for gap in 0..=2 {
        let inst = instance(60, 4, gap, seed);
        group.bench_with_input(BenchmarkId::from_parameter(gap), &inst, |b, inst| b.iter(|| solve(black_box(inst))));
    }
    group.finish();
}

fn oracle_vs_solver(c: &mut Criterion) {
    let g = random_connected_graph(8, 0.3, 3);
    let inst = CvcInstance::new(g, 4, 3);
    let mut group = c.benchmark_group("n8_k4_d3");
    group.bench_function("solver", |b| b.iter(|| solve(black_box(&inst))));
    group.bench_function("oracle", |b| b.iter(|| oracle_contraction_vc(black_box(&inst)).unwrap()));
    group.finish();
}

criterion_group!(benches, k_equals_d, fan_out, oracle_vs_solver);
criterion_main!(benches);
