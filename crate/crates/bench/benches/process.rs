use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use srg_bench::{classical_to, jam_once, naive_to};

fn jam(c: &mut Criterion) {
    let mut g = c.benchmark_group("jam_event_driven");
    g.sample_size(20);
    for &n in &[10_000usize, 100_000] {
        for &p in &[0.0, 0.5, 1.0] {
            g.bench_with_input(BenchmarkId::new(format!("p={p}"), n), &n, |b, &n| {
                b.iter(|| jam_once(black_box(n), p, 7))
            });
        }
    }
    g.finish();
}

fn samplers(c: &mut Criterion) {
    let mut g = c.benchmark_group("to_time_2");
    g.sample_size(20);
    g.bench_function("naive_p0.5_n1e4", |b| b.iter(|| naive_to(black_box(10_000), 0.5, 2.0, 3)));
    g.bench_function("classical_n1e5", |b| b.iter(|| classical_to(black_box(100_000), 2.0, false, 3)));
    g.bench_function("classical_cycles_n1e5", |b| b.iter(|| classical_to(black_box(100_000), 1.0, true, 3)));
    g.finish();
}

criterion_group!(benches, jam, samplers);
criterion_main!(benches);
