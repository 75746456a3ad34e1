use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use tdr_core::generate::{gen_random, GenMode};
use tdr_core::semigraph::shapes;
use tdr_core::{decompose, Dims, TensorDiagram};

fn uniform(d: &TensorDiagram, k: usize) -> Dims {
    d.wire_ids().map(|w| (w.to_string(), k)).collect()
}

fn bench_decompose(c: &mut Criterion) {
    let mut group = c.benchmark_group("decompose");
    for n in [2, 4, 6] {
        let d = shapes::open_path(n);
        let rep = gen_random(&d, &uniform(&d, 6), 1, GenMode::Sum).unwrap().rep;
        group.bench_with_input(BenchmarkId::new("open_path", n), &rep, |b, r| {
            b.iter(|| decompose(black_box(r)).unwrap())
        });
    }
    for n in [1, 3, 5] {
        let d = shapes::cycle(n);
        let rep = gen_random(&d, &uniform(&d, 6), 1, GenMode::Sum).unwrap().rep;
        group.bench_with_input(BenchmarkId::new("cycle", n), &rep, |b, r| {
            b.iter(|| decompose(black_box(r)).unwrap())
        });
    }
    group.finish();
}

fn bench_contract(c: &mut Criterion) {
    let d = shapes::cycle(5);
    let rep = gen_random(&d, &uniform(&d, 4), 2, GenMode::Generic).unwrap().rep;
    c.bench_function("contract cycle(5) dim 4", |b| b.iter(|| black_box(&rep).contract().unwrap()));
}

criterion_group!(benches, bench_decompose, bench_contract);
criterion_main!(benches);
