use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use domino_core::kl::{KlLimits, KlTable};
use domino_core::operators::OperatorOptions;
use domino_core::orbit::{left_orbits, OperatorFamily};
use domino_core::par::Exec;
use domino_core::{Kind, Shape};

const STRATEGIES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn orbits(c: &mut Criterion) {
    let shape: Shape = "5,3,3,1".parse().unwrap();
    let mut group = c.benchmark_group("left_orbits_5331");
    for (name, exec) in STRATEGIES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| left_orbits(&shape, Kind::C, OperatorFamily::FULL, OperatorOptions::default(), exec).unwrap())
        });
    }
    group.finish();
}

fn kl(c: &mut Criterion) {
    let mut group = c.benchmark_group("kl_rank4");
    group.sample_size(10);
    for (name, exec) in STRATEGIES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| KlTable::compute(4, KlLimits { exec: Some(exec), ..Default::default() }).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, orbits, kl);
criterion_main!(benches);
