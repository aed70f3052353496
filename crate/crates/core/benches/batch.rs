//! Batch evaluation: the rayon-backed ordered map against the sequential
//! baseline on the same packing workload. With the `parallel` feature off,
//! only the sequential case runs.

use criterion::{criterion_group, criterion_main, Criterion, Throughput};
use rangepack::batch;
use rangepack::generators::{gen_uniform, DEFAULT_CAPACITY};
use rangepack::ranger::{pack, ProbeStrategy};
use rangepack::Instance;

fn workload() -> Vec<Instance> {
    (0..256)
        .map(|seed| gen_uniform(400, 1, DEFAULT_CAPACITY, seed, DEFAULT_CAPACITY).unwrap())
        .collect()
}

fn bench_batch(c: &mut Criterion) {
    let instances = workload();
    let total: u64 = instances.iter().map(|i| i.len() as u64).sum();
    let mut group = c.benchmark_group("batch-pack-256x400");
    group.throughput(Throughput::Elements(total));
    group.bench_function("sequential", |b| {
        b.iter(|| {
            batch::map_seq(&instances, |inst| {
                pack(inst, ProbeStrategy::SeededRandom(0)).bin_count()
            })
        })
    });
    #[cfg(feature = "parallel")]
    group.bench_function("parallel", |b| {
        b.iter(|| {
            batch::map(&instances, |inst| {
                pack(inst, ProbeStrategy::SeededRandom(0)).bin_count()
            })
        })
    });
    group.finish();
}

criterion_group!(benches, bench_batch);
criterion_main!(benches);
