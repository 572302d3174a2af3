//! Wall-clock comparison of the quadrature and FFT transform paths.

use std::time::{Duration, Instant};

use clifft::fourier::transform;
use clifft::grid::sample;
use clifft::{GridSpec, KernelSign, Multivector, TransformMethod};
use serde::Serialize;

use crate::suite::{params, tol, Report, Tol};

#[derive(Debug, Clone, Serialize)]
pub struct BenchEntry {
    pub points: usize,
    pub quadrature_seconds: f64,
    pub fft_seconds: f64,
    pub speedup: f64,
    pub quadrature_runs: usize,
    pub fft_runs: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchTable {
    pub half_width: f64,
    pub sign: KernelSign,
    pub threads: usize,
    pub entries: Vec<BenchEntry>,
}

/// Mean seconds per call, repeating until `budget` has elapsed.
fn time_it(budget: Duration, mut f: impl FnMut()) -> (f64, usize) {
    let start = Instant::now();
    let mut runs = 0;
    while runs == 0 || start.elapsed() < budget {
        f();
        runs += 1;
    }
    (start.elapsed().as_secs_f64() / runs as f64, runs)
}

pub fn run_bench(
    half_width: f64,
    points: &[usize],
    sign: KernelSign,
) -> clifft::Result<BenchTable> {
    let mut entries = Vec::new();
    for &n in points {
        let grid = GridSpec::new(2, half_width, n)?;
        let f = sample(
            |x| {
                let w = (-0.5 * (x[0] * x[0] + x[1] * x[1])).exp();
                Multivector::from_coeffs(2, vec![w, x[0] * w, x[1] * w, x[0] * x[1] * w])
                    .expect("m = 2")
            },
            &grid,
        );
        transform(&f, sign, TransformMethod::Fft)?;
        let mut failure = None;
        let mut call = |method| {
            if let Err(e) = transform(&f, sign, method) {
                failure = Some(e);
            }
        };
        let (fft, fft_runs) = time_it(Duration::from_millis(200), || call(TransformMethod::Fft));
        let (quad, quad_runs) = time_it(Duration::from_millis(500), || {
            call(TransformMethod::Quadrature)
        });
        if let Some(e) = failure {
            return Err(e);
        }
        entries.push(BenchEntry {
            points: n,
            quadrature_seconds: quad,
            fft_seconds: fft,
            speedup: quad / fft,
            quadrature_runs: quad_runs,
            fft_runs,
        });
    }
    Ok(BenchTable {
        half_width,
        sign,
        threads: crate::worker_threads(),
        entries,
    })
}

/// Speedup rows; timings never gate the exit status.
pub fn bench_rows(table: &BenchTable, report: &mut Report) {
    for e in &table.entries {
        report.info(
            "bench.speedup",
            params(&[
                ("m", &2),
                ("R", &table.half_width),
                ("N", &e.points),
                ("threads", &table.threads),
            ]),
            Ok(e.speedup),
            Tol::AtLeast(tol::SPEEDUP),
        );
    }
}
