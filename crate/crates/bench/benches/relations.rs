use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use trumpkit::{geometric_catalyst, majorizes, minimize_f, sort_desc, tensor, SearchConfig};
use trumpkit_bench::{catalysis_pair, halfway_to_uniform, majorized_by, staircase};

fn bench_majorizes(c: &mut Criterion) {
    let mut group = c.benchmark_group("majorizes_tensor");
    for d in [4usize, 8, 16] {
        let y = staircase(d);
        let x = majorized_by(&y, 1);
        let z = staircase(d);
        let (xz, yz) = (tensor(&x, &z), tensor(&y, &z));
        group.bench_with_input(
            BenchmarkId::from_parameter(d * d),
            &(xz, yz),
            |b, (xz, yz)| b.iter(|| majorizes(black_box(xz), black_box(yz)).unwrap()),
        );
    }
    group.finish();
}

fn bench_geometric(c: &mut Criterion) {
    let y = sort_desc(&staircase(5));
    let x = sort_desc(&halfway_to_uniform(&y));
    c.bench_function("geometric_catalyst_d5", |b| {
        b.iter(|| geometric_catalyst(black_box(&x), black_box(&y)).unwrap())
    });
}

fn bench_minimize(c: &mut Criterion) {
    let (x, y) = catalysis_pair();
    let mut group = c.benchmark_group("minimize_f");
    group.sample_size(20);
    for k in [2usize, 3] {
        let config = SearchConfig {
            k,
            ..SearchConfig::default()
        };
        group.bench_with_input(BenchmarkId::from_parameter(k), &config, |b, config| {
            b.iter(|| minimize_f(black_box(&x), black_box(&y), config).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_majorizes, bench_geometric, bench_minimize);
criterion_main!(benches);
