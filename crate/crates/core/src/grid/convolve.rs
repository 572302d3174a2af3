use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::algebra::blade_sign;
use crate::error::{Error, Result};
use crate::par;

use super::{GridSpec, SampledField};

pub const RADIAL_TOL: f64 = 1e-8;

/// Exact shell label: `‖x‖² = (h/2)² Σ (2 i_k + 1 - N)²`.
fn shell_key(grid: &GridSpec, node: usize) -> u64 {
    let n = grid.points() as i64;
    grid.multi_index(node)
        .into_iter()
        .map(|i| {
            let k = 2 * i as i64 + 1 - n;
            (k * k) as u64
        })
        .sum()
}

fn shells(grid: &GridSpec) -> BTreeMap<u64, Vec<usize>> {
    let mut map: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
    for node in 0..grid.node_count() {
        map.entry(shell_key(grid, node)).or_default().push(node);
    }
    map
}

/// Largest spread of values on a shell `‖x‖ = const`, relative to `max ‖f‖_c`.
///
/// Shells are exact: nodes are grouped by their integer radius label, so a
/// field sampled from a radial function returns rounding-level values.
pub fn radial_deviation(f: &SampledField) -> f64 {
    let peak = f.max_norm();
    if peak == 0.0 {
        return 0.0;
    }
    let mut worst = 0.0_f64;
    for nodes in shells(f.grid()).values() {
        let reference = f.coeffs(nodes[0]);
        for &node in &nodes[1..] {
            let d = f
                .coeffs(node)
                .iter()
                .zip(reference)
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt();
            worst = worst.max(d);
        }
    }
    worst / peak
}

/// `(‖x‖, mean ‖f(x)‖_c)` per shell, ordered by radius.
pub fn radial_profile(f: &SampledField) -> Vec<(f64, f64)> {
    let half = 0.5 * f.grid().step();
    shells(f.grid())
        .into_iter()
        .map(|(key, nodes)| {
            let mean = nodes.iter().map(|&i| f.node_norm(i)).sum::<f64>() / nodes.len() as f64;
            (half * (key as f64).sqrt(), mean)
        })
        .collect()
}

/// In-place n-d FFT over an `l^m` row-major cube.
fn fft_nd(data: &mut [Complex64], l: usize, m: usize, inverse: bool) {
    let mut planner = FftPlanner::new();
    let plan = if inverse {
        planner.plan_fft_inverse(l)
    } else {
        planner.plan_fft_forward(l)
    };
    let total = data.len();
    for axis in 0..m {
        let stride = l.pow((m - 1 - axis) as u32);
        let outer = total / (stride * l);
        // lines along `axis` start at (o * l * stride + s)
        let starts: Vec<usize> = (0..outer)
            .flat_map(|o| (0..stride).map(move |s| o * l * stride + s))
            .collect();
        let lines = par::map_indices(starts.len(), |t| {
            let mut line: Vec<Complex64> = (0..l).map(|j| data[starts[t] + j * stride]).collect();
            plan.process(&mut line);
            line
        });
        for (t, line) in lines.into_iter().enumerate() {
            for (j, v) in line.into_iter().enumerate() {
                data[starts[t] + j * stride] = v;
            }
        }
    }
}

fn padded_spectrum(f: &SampledField, blade: usize, l: usize, offset: usize) -> Vec<Complex64> {
    let grid = f.grid();
    let m = grid.dim();
    let mut buf = vec![Complex64::new(0.0, 0.0); l.pow(m as u32)];
    for node in 0..f.len() {
        let v = f.coeffs(node)[blade];
        if v == 0.0 {
            continue;
        }
        let idx = grid.multi_index(node);
        let p = idx.iter().fold(0, |acc, &i| acc * l + i + offset);
        buf[p] = Complex64::new(v, 0.0);
    }
    fft_nd(&mut buf, l, m, false);
    buf
}

/// Classical convolution `∫ f(x - y) g(y) dy` for radial `f`, per blade pair
/// with the geometric product `f(x - y) g(y)`.
///
/// Node differences fall on the lattice `h Z^m`, half a step off the
/// midpoint nodes, so `f` is shifted by trigonometric interpolation.
pub fn radial_convolve(f: &SampledField, g: &SampledField) -> Result<SampledField> {
    if f.grid() != g.grid() {
        return Err(Error::GridMismatch);
    }
    let deviation = radial_deviation(f);
    if deviation > RADIAL_TOL {
        return Err(Error::NotRadial { deviation });
    }
    let grid = *f.grid();
    let m = grid.dim();
    let n = grid.points();
    let l = 2 * n;
    let total = l.pow(m as u32);
    let blades = 1usize << m;

    // half-sample shift along every axis; Nyquist bin dropped
    let shift: Vec<Complex64> = (0..l)
        .map(|k| {
            if k == l / 2 {
                return Complex64::new(0.0, 0.0);
            }
            let signed = if k < l / 2 {
                k as f64
            } else {
                k as f64 - l as f64
            };
            Complex64::from_polar(1.0, -PI * signed / l as f64)
        })
        .collect();
    let fa: Vec<Option<Vec<Complex64>>> = (0..blades)
        .map(|a| {
            (!f.component_is_zero(a)).then(|| {
                let mut s = padded_spectrum(f, a, l, n / 2);
                for (i, v) in s.iter_mut().enumerate() {
                    let mut rest = i;
                    for _ in 0..m {
                        *v *= shift[rest % l];
                        rest /= l;
                    }
                }
                s
            })
        })
        .collect();
    let gb: Vec<Option<Vec<Complex64>>> = (0..blades)
        .map(|b| (!g.component_is_zero(b)).then(|| padded_spectrum(g, b, l, 0)))
        .collect();

    let mut out = SampledField::zeros(grid);
    let scale = grid.cell_volume() / total as f64;
    for c in 0..blades {
        let mut acc = vec![Complex64::new(0.0, 0.0); total];
        let mut any = false;
        for (a, fs) in fa.iter().enumerate() {
            let (Some(fs), Some(gs)) = (fs, &gb[a ^ c]) else {
                continue;
            };
            any = true;
            let sign = blade_sign(a as u32, (a ^ c) as u32);
            for ((o, x), y) in acc.iter_mut().zip(fs).zip(gs) {
                *o += sign * x * y;
            }
        }
        if !any {
            continue;
        }
        fft_nd(&mut acc, l, m, true);
        let raw = out.raw_mut();
        for node in 0..grid.node_count() {
            let idx = grid.multi_index(node);
            let p = idx.iter().fold(0, |acc, &i| acc * l + i + n);
            raw[node * blades + c] = acc[p].re * scale;
        }
    }
    Ok(out)
}

/// Clifford convolution of a radial `f` with `g`: `(2π)^{-m/2}` times the
/// classical convolution.
pub fn clifford_convolve(f: &SampledField, g: &SampledField) -> Result<SampledField> {
    let m = f.grid().dim() as f64;
    Ok(radial_convolve(f, g)?.scale((2.0 * PI).powf(-m / 2.0)))
}
