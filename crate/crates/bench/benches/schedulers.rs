use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qsched::{schedule_exact, schedule_greedy, schedule_layered, ExactOptions, Graph};
use qsched_bench::{c5, complete, random_qaoa};

fn instances() -> Vec<(&'static str, qsched::CircuitInstance)> {
    vec![
        ("c5", c5()),
        ("cycle7", random_qaoa(&Graph::cycle(7), 1)),
        ("k6", random_qaoa(&complete(6), 1)),
        ("k7", random_qaoa(&complete(7), 1)),
    ]
}

fn heuristics(c: &mut Criterion) {
    let mut group = c.benchmark_group("heuristics");
    for (name, circuit) in instances() {
        group.bench_with_input(BenchmarkId::new("layered", name), &circuit, |b, c| {
            b.iter(|| schedule_layered(black_box(c)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("greedy", name), &circuit, |b, c| {
            b.iter(|| schedule_greedy(black_box(c)).unwrap())
        });
    }
    group.finish();
}

fn exact(c: &mut Criterion) {
    let mut group = c.benchmark_group("exact");
    group.sample_size(20);
    let options = ExactOptions::default();
    for (name, circuit) in instances() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &circuit, |b, c| {
            b.iter(|| schedule_exact(black_box(c), &options).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, heuristics, exact);
criterion_main!(benches);
