use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use spectra_core::exact::solve_spectrum_with;
use spectra_core::{Execution, PrecisionContext};

fn spectrum(c: &mut Criterion) {
    let ctx = PrecisionContext::new(50).unwrap();
    let mut group = c.benchmark_group("solve_spectrum");
    group.sample_size(10);
    for n in [64usize, 256] {
        for (label, exec) in [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)] {
            group.bench_with_input(BenchmarkId::new(label, n), &n, |b, &n| {
                b.iter(|| solve_spectrum_with(black_box(n), &ctx, exec).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, spectrum);
criterion_main!(benches);
