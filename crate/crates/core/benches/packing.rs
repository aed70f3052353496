//! Single-run packing throughput: the range matcher against the decreasing
//! fit baselines, and its scaling across instance sizes.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use rangepack::baselines::{bfd, ffd};
use rangepack::generators::{gen_uniform, DEFAULT_CAPACITY};
use rangepack::ranger::{pack, ProbeStrategy};
use std::hint::black_box;

fn bench_algorithms(c: &mut Criterion) {
    let instance = gen_uniform(10_000, 1, DEFAULT_CAPACITY, 42, DEFAULT_CAPACITY).unwrap();
    let mut group = c.benchmark_group("algorithms-10k");
    group.throughput(Throughput::Elements(instance.len() as u64));
    group.bench_function("ranger", |b| {
        b.iter(|| pack(black_box(&instance), ProbeStrategy::SeededRandom(0)))
    });
    group.bench_function("ffd", |b| b.iter(|| ffd(black_box(&instance))));
    group.bench_function("bfd", |b| b.iter(|| bfd(black_box(&instance))));
    group.finish();
}

fn bench_scaling(c: &mut Criterion) {
    let mut group = c.benchmark_group("ranger-scaling");
    for n in [25_000usize, 50_000, 100_000] {
        let instance = gen_uniform(n, 1, DEFAULT_CAPACITY, 7, DEFAULT_CAPACITY).unwrap();
        group.throughput(Throughput::Elements(n as u64));
        group.bench_with_input(BenchmarkId::from_parameter(n), &instance, |b, inst| {
            b.iter(|| pack(black_box(inst), ProbeStrategy::SeededRandom(0)))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_algorithms, bench_scaling);
criterion_main!(benches);
