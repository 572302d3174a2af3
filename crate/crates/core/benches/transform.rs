use std::hint::black_box;

use clifft::fourier::{transform, transform_at};
use clifft::grid::sample;
use clifft::{GridSpec, KernelSign, Multivector, SampledField, TransformMethod};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn field(n: usize) -> SampledField {
    let grid = GridSpec::new(2, 10.0, n).unwrap();
    sample(
        |x| {
            let w = (-0.5 * (x[0] * x[0] + x[1] * x[1])).exp();
            Multivector::from_coeffs(2, vec![w, x[0] * w, x[1] * w, x[0] * x[1] * w]).unwrap()
        },
        &grid,
    )
}

fn methods(c: &mut Criterion) {
    let mut group = c.benchmark_group("method");
    group.sample_size(10);
    for n in [32usize, 64, 128] {
        let f = field(n);
        group.bench_with_input(BenchmarkId::new("quadrature", n), &f, |b, f| {
            b.iter(|| {
                transform(black_box(f), KernelSign::Minus, TransformMethod::Quadrature).unwrap()
            })
        });
    }
    for n in [32usize, 64, 128, 256, 512] {
        let f = field(n);
        group.bench_with_input(BenchmarkId::new("fft", n), &f, |b, f| {
            b.iter(|| transform(black_box(f), KernelSign::Minus, TransformMethod::Fft).unwrap())
        });
    }
    group.finish();
}

/// One worker against the default pool; build with `--no-default-features`
/// for the sequential code path itself.
fn threads(c: &mut Criterion) {
    let single = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap();
    let mut group = c.benchmark_group("threads");
    group.sample_size(10);
    let f = field(256);
    let q = field(64);
    for (label, pool) in [("one", Some(&single)), ("default", None)] {
        let run = |work: &(dyn Fn() + Sync)| match pool {
            Some(p) => p.install(work),
            None => work(),
        };
        group.bench_function(BenchmarkId::new("fft_256", label), |b| {
            b.iter(|| {
                run(&|| {
                    drop(transform(black_box(&f), KernelSign::Minus, TransformMethod::Fft).unwrap())
                })
            })
        });
        group.bench_function(BenchmarkId::new("quadrature_64", label), |b| {
            b.iter(|| {
                run(&|| {
                    drop(
                        transform(
                            black_box(&q),
                            KernelSign::Minus,
                            TransformMethod::Quadrature,
                        )
                        .unwrap(),
                    )
                })
            })
        });
        group.bench_function(BenchmarkId::new("point_eval_256", label), |b| {
            b.iter(|| {
                run(&|| drop(transform_at(black_box(&f), [0.3, -1.2], KernelSign::Plus).unwrap()))
            })
        });
    }
    group.finish();
}

criterion_group!(benches, methods, threads);
criterion_main!(benches);
