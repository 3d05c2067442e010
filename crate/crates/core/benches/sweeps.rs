//! Sequential versus parallel execution of the combinatorial sweeps.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use cm_type_lab::davenport::{davenport_with, AbelianGroup};
use cm_type_lab::descent::{minimal_extended_tuples_with, CaseTag};
use cm_type_lab::par::Execution;

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn minimal_tuples(c: &mut Criterion) {
    let mut group = c.benchmark_group("minimal_tuples_box6");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| minimal_extended_tuples_with(exec, CaseTag::NonreducedTwoPrimes, 6).unwrap())
        });
    }
    group.finish();
}

fn davenport_constants(c: &mut Criterion) {
    let mut group = c.benchmark_group("davenport");
    group.sample_size(10);
    for spec in ["2,2,2,2", "4,4", "2,2,6"] {
        let g: AbelianGroup = spec.parse().unwrap();
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, &g), &exec, |b, &exec| {
                b.iter(|| davenport_with(exec, &g).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, minimal_tuples, davenport_constants);
criterion_main!(benches);
