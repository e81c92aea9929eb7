use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use srg_core::oracle::{enumerate_exact, integrate_trees, OdeConfig};
use srg_core::theory::{solve_s, tree_densities, u1_jam_p1};
use srg_core::Model;

fn closed_forms(c: &mut Criterion) {
    c.bench_function("solve_s", |b| b.iter(|| solve_s(black_box(2.3), black_box(0.4))));
    c.bench_function("tree_densities_1e4", |b| {
        b.iter(|| tree_densities(10_000, black_box(0.9), 0.5, Model::Simple))
    });
    c.bench_function("u1_jam_p1", |b| b.iter(u1_jam_p1));
}

fn oracles(c: &mut Criterion) {
    let mut g = c.benchmark_group("oracle");
    g.sample_size(10);
    g.bench_function("rk4_trees_k200_t0.9", |b| {
        b.iter(|| integrate_trees(OdeConfig::new(0.5, Model::Simple, 200, 1e-3), &[0.9], None))
    });
    g.bench_function("exact_n6", |b| b.iter(|| enumerate_exact(black_box(6), 0.5)));
    g.finish();
}

criterion_group!(benches, closed_forms, oracles);
criterion_main!(benches);
