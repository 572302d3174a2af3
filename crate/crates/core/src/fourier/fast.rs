//! Fast transform: each blade component gets a classical 2-d Fourier sum
//! `Σ_x f_A(x) e^{±i x·ω}` evaluated on the grid nodes by a chirp-z
//! (Bluestein) factorisation, then the kernel's `1` and `e12` parts are
//! recombined by left multiplication.
//!
//! The frequency nodes coincide with the spatial nodes, which are not
//! commensurate with the DFT spacing `2π/(2R)` in general; the chirp-z form
//! evaluates the same midpoint sum for any spacing.

use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::algebra::{gp_accumulate, Multivector};
use crate::error::Result;
use crate::grid::{GridSpec, SampledField};
use crate::par;

use super::kernel::{KernelSign, E12};
use super::{require_m2, NORMALIZATION_2D};

/// Plan for `S_k = Σ_j z_j e^{iσ u_j u_k}` with `u_j = a + j h`.
pub struct ChirpPlan {
    n: usize,
    len: usize,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
    chirp_hat: Vec<Complex64>,
    pre: Vec<Complex64>,
    post: Vec<Complex64>,
}

impl ChirpPlan {
    /// `sigma` is `+1` or `-1`; `coords` must be equispaced.
    pub fn new(coords: &[f64], sigma: f64) -> Self {
        let n = coords.len();
        assert!(n >= 2);
        let a = coords[0];
        let h = coords[1] - coords[0];
        // u_j u_k = a² + a h (j + k) + h² j k and j k = (j² + k² - (k - j)²) / 2
        let len = 2 * n;
        let mut planner = FftPlanner::new();
        let forward = planner.plan_fft_forward(len);
        let inverse = planner.plan_fft_inverse(len);
        let cis = |t: f64| Complex64::from_polar(1.0, t);
        let pre: Vec<Complex64> = (0..n)
            .map(|j| {
                let jf = j as f64;
                cis(sigma * (a * h * jf + 0.5 * h * h * jf * jf))
            })
            .collect();
        let post: Vec<Complex64> = (0..n)
            .map(|k| {
                let kf = k as f64;
                cis(sigma * (a * a + a * h * kf + 0.5 * h * h * kf * kf))
            })
            .collect();
        let mut chirp = vec![Complex64::new(0.0, 0.0); len];
        for j in 0..n {
            let w = cis(-sigma * 0.5 * h * h * (j * j) as f64);
            chirp[j] = w;
            if j > 0 {
                chirp[len - j] = w;
            }
        }
        forward.process(&mut chirp);
        ChirpPlan {
            n,
            len,
            forward,
            inverse,
            chirp_hat: chirp,
            pre,
            post,
        }
    }

    pub fn scratch_len(&self) -> usize {
        self.len
    }

    /// Apply in place to one line of length `n`; `work` has length `2n`.
    pub fn apply(&self, line: &mut [Complex64], work: &mut [Complex64]) {
        debug_assert_eq!(line.len(), self.n);
        debug_assert_eq!(work.len(), self.len);
        for j in 0..self.n {
            work[j] = line[j] * self.pre[j];
        }
        for w in work[self.n..].iter_mut() {
            *w = Complex64::new(0.0, 0.0);
        }
        self.forward.process(work);
        for (w, c) in work.iter_mut().zip(&self.chirp_hat) {
            *w *= c;
        }
        self.inverse.process(work);
        let inv_len = 1.0 / self.len as f64;
        for k in 0..self.n {
            line[k] = work[k] * self.post[k] * inv_len;
        }
    }
}

/// `G(ω) = Σ_x z(x) e^{iσ x·ω}` on the node grid, in place (row-major `n × n`).
pub(crate) fn classical_2d(data: &mut [Complex64], grid: &GridSpec, sigma: f64) {
    let n = grid.points();
    let plan = ChirpPlan::new(&grid.axis_coords(), sigma);
    let rows_per_task = 8;
    let pass = |buf: &mut [Complex64]| {
        par::for_each_chunk_mut(buf, n * rows_per_task, |_, rows| {
            let mut work = vec![Complex64::new(0.0, 0.0); plan.scratch_len()];
            for line in rows.chunks_mut(n) {
                plan.apply(line, &mut work);
            }
        });
    };
    pass(data);
    transpose(data, n);
    pass(data);
    transpose(data, n);
}

fn transpose(data: &mut [Complex64], n: usize) {
    for i in 0..n {
        for j in (i + 1)..n {
            data.swap(i * n + j, j * n + i);
        }
    }
}

/// `F_±(f)` on the input grid via per-component chirp-z sums.
pub(crate) fn transform(field: &SampledField, sign: KernelSign) -> Result<SampledField> {
    require_m2(field.grid())?;
    let grid = *field.grid();
    let n = grid.points();
    let sigma = match sign {
        KernelSign::Minus => 1.0,
        KernelSign::Plus => -1.0,
    };
    let scale = grid.cell_volume() * NORMALIZATION_2D;
    let e12 = Multivector::blade(2, E12, 1.0);
    let mut out = SampledField::zeros(grid);
    for blade in 0..4 {
        if field.component_is_zero(blade) {
            continue;
        }
        let mut g: Vec<Complex64> = field
            .component(blade)
            .into_iter()
            .map(|v| Complex64::new(v, 0.0))
            .collect();
        classical_2d(&mut g, &grid, sigma);
        // cos part multiplies e_A, sin part multiplies e12 e_A
        let mut unit = [0.0; 4];
        unit[blade] = 1.0;
        let mut rotated = [0.0; 4];
        gp_accumulate(e12.coeffs(), &unit, &mut rotated);
        let raw = out.raw_mut();
        for c in 0..n {
            for d in 0..n {
                // y = (u_c, u_d) ↦ ω = (y2, -y1) = (u_d, u_{n-1-c})
                let v = g[d * n + (n - 1 - c)] * scale;
                let dst = &mut raw[4 * (c * n + d)..4 * (c * n + d) + 4];
                dst[blade] += v.re;
                for k in 0..4 {
                    dst[k] += v.im * rotated[k];
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chirp_matches_direct_sum() {
        let coords: Vec<f64> = (0..24).map(|j| -3.0 + (j as f64 + 0.5) * 0.25).collect();
        let z: Vec<Complex64> = (0..24)
            .map(|j| Complex64::new((j as f64 * 0.3).cos(), (j as f64 * 0.7).sin()))
            .collect();
        for sigma in [1.0, -1.0] {
            let plan = ChirpPlan::new(&coords, sigma);
            let mut line = z.clone();
            let mut work = vec![Complex64::new(0.0, 0.0); plan.scratch_len()];
            plan.apply(&mut line, &mut work);
            for k in 0..24 {
                let direct: Complex64 = (0..24)
                    .map(|j| z[j] * Complex64::from_polar(1.0, sigma * coords[j] * coords[k]))
                    .sum();
                assert!((line[k] - direct).norm() < 1e-12, "k={k}");
            }
        }
    }
}
