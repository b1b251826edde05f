use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use surfhom_bench::{Inputs, GENUS};
use surface_homotopy::Surface;

const LENGTHS: [usize; 4] = [1 << 10, 1 << 12, 1 << 14, 1 << 16];

fn preprocessing(c: &mut Criterion) {
    c.bench_function("preprocess", |b| b.iter(|| Surface::canonical(black_box(GENUS), true).unwrap()));
}

fn contractibility(c: &mut Criterion) {
    let mut group = c.benchmark_group("contractible");
    for k in LENGTHS {
        let inp = Inputs::new(k, 1);
        group.throughput(Throughput::Elements(k as u64));
        group.bench_with_input(BenchmarkId::from_parameter(k), &inp, |b, inp| {
            b.iter(|| inp.surface.is_contractible(black_box(&inp.word)).unwrap())
        });
    }
    group.finish();
}

fn free_homotopy(c: &mut Criterion) {
    let mut group = c.benchmark_group("free-homotopic");
    group.sample_size(10);
    for k in LENGTHS {
        let inp = Inputs::new(k, 2);
        group.throughput(Throughput::Elements((inp.pair.0.len() + inp.pair.1.len()) as u64));
        group.bench_with_input(BenchmarkId::from_parameter(k), &inp, |b, inp| {
            b.iter(|| inp.surface.free_homotopic(black_box(&inp.pair.0), black_box(&inp.pair.1)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, preprocessing, contractibility, free_homotopy);
criterion_main!(benches);
