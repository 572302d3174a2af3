//! The Clifford heat kernel `N_c(x, s) = (2π)^{-m/2} (2s)^{-m/2} e^{-‖x‖²/4s}`
//! and numerical checks of its identities.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::algebra::Multivector;
use crate::error::{Error, Result};
use crate::fourier::{transform, KernelSign, TransformMethod};
use crate::grid::{clifford_convolve, lp_norm, sample, GridSpec, SampledField};
use crate::par;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HeatKernelParams {
    m: usize,
    s: f64,
}

impl HeatKernelParams {
    pub fn new(m: usize, s: f64) -> Result<Self> {
        if m == 0 || m % 2 != 0 {
            return Err(Error::UnsupportedDimension {
                m,
                reason: "the heat kernel identities are stated for even m",
            });
        }
        if !(s > 0.0 && s.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "s",
                value: s,
                reason: "heat time must be positive",
            });
        }
        Ok(HeatKernelParams { m, s })
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn time(&self) -> f64 {
        self.s
    }

    pub fn with_time(&self, s: f64) -> Result<Self> {
        HeatKernelParams::new(self.m, s)
    }

    /// Scalar value of the kernel at squared radius `r2`.
    pub fn value_at_radius_sqr(&self, r2: f64) -> f64 {
        let m = self.m as f64;
        (4.0 * PI * self.s).powf(-m / 2.0) * (-r2 / (4.0 * self.s)).exp()
    }
}

/// `N_c(x, s)` as a grade-0 multivector.
pub fn heat_kernel(params: HeatKernelParams, x: &[f64]) -> Result<Multivector> {
    if x.len() != params.m {
        return Err(Error::DimensionMismatch {
            left: x.len(),
            right: params.m,
        });
    }
    let r2: f64 = x.iter().map(|v| v * v).sum();
    Ok(Multivector::scalar(
        params.m,
        params.value_at_radius_sqr(r2),
    ))
}

pub fn sample_heat_kernel(params: HeatKernelParams, grid: &GridSpec) -> Result<SampledField> {
    if grid.dim() != params.m {
        return Err(Error::DimensionMismatch {
            left: grid.dim(),
            right: params.m,
        });
    }
    Ok(sample(
        |x| {
            let r2: f64 = x.iter().map(|v| v * v).sum();
            Multivector::scalar(params.m, params.value_at_radius_sqr(r2))
        },
        grid,
    ))
}

/// Relative time step of the central difference in `s`.
pub const TIME_STEP_FRACTION: f64 = 1e-4;

/// `max |∂_s N_c - Δ_x N_c| / max |N_c|` over interior nodes, with central
/// differences of step `h` in space and `s·1e-4` in time.
pub fn heat_pde_residual(params: HeatKernelParams, grid: &GridSpec) -> Result<f64> {
    if grid.dim() != params.m {
        return Err(Error::DimensionMismatch {
            left: grid.dim(),
            right: params.m,
        });
    }
    let h = grid.step();
    let limit = params.s.sqrt() / 4.0;
    if h > limit {
        return Err(Error::UnderResolved { step: h, limit });
    }
    let s = params.s;
    let tau = s * TIME_STEP_FRACTION;
    let n = grid.points();
    let m = grid.dim();
    let at = |x: &[f64], t: f64| {
        let r2: f64 = x.iter().map(|v| v * v).sum();
        params
            .with_time(t)
            .expect("positive time")
            .value_at_radius_sqr(r2)
    };
    let peak = params.value_at_radius_sqr(0.0);
    let worst = par::max_indices(grid.node_count(), |node| {
        let idx = grid.multi_index(node);
        if idx.iter().any(|&i| i == 0 || i == n - 1) {
            return 0.0;
        }
        let x = grid.point(node);
        let centre = at(&x, s);
        let mut lap = 0.0;
        let mut y = x.clone();
        for k in 0..m {
            y[k] = x[k] + h;
            let up = at(&y, s);
            y[k] = x[k] - h;
            let down = at(&y, s);
            y[k] = x[k];
            lap += (up - 2.0 * centre + down) / (h * h);
        }
        let dt = (at(&x, s + tau) - at(&x, s - tau)) / (2.0 * tau);
        (dt - lap).abs()
    });
    Ok(worst / peak)
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct OriginLaplacian {
    /// Central-difference `Δ N_c(0, s)` with step `h`.
    pub finite_difference: f64,
    /// `-(m / 2s) N_c(0, s)`.
    pub analytic: f64,
}

pub fn heat_origin_laplacian(params: HeatKernelParams, h: f64) -> OriginLaplacian {
    let m = params.m as f64;
    let c = params.value_at_radius_sqr(0.0);
    let side = params.value_at_radius_sqr(h * h);
    OriginLaplacian {
        finite_difference: m * 2.0 * (side - c) / (h * h),
        analytic: -(m / (2.0 * params.s)) * c,
    }
}

/// `‖F_±(N_c(·, s)) - (2π)^{-1} e^{-s‖·‖²}‖_∞` on the grid (m = 2).
pub fn heat_transform_check(
    params: HeatKernelParams,
    grid: &GridSpec,
    sign: KernelSign,
    method: TransformMethod,
) -> Result<f64> {
    let f = sample_heat_kernel(params, grid)?;
    let image = transform(&f, sign, method)?.field;
    let s = params.s;
    let want = sample(
        |y| Multivector::scalar(2, (-s * (y[0] * y[0] + y[1] * y[1])).exp() / (2.0 * PI)),
        grid,
    );
    image.max_diff(&want)
}

/// `‖F_±(F_±(N_c(·, s))) - N_c(·, s)‖_∞ / ‖N_c(·, s)‖_∞`: the inverse
/// representation of the kernel through its transform.
pub fn heat_inverse_check(
    params: HeatKernelParams,
    grid: &GridSpec,
    sign: KernelSign,
    method: TransformMethod,
) -> Result<f64> {
    let f = sample_heat_kernel(params, grid)?;
    let once = transform(&f, sign, method)?.field;
    let twice = transform(&once, sign, method)?.field;
    Ok(twice.max_diff(&f)? / f.max_norm())
}

/// Largest relative defect of `N_c(λ^{1/2} x, λ s) = λ^{-m/2} N_c(x, s)`.
pub fn heat_scaling_check(m: usize, samples: &[(f64, Vec<f64>, f64)]) -> Result<f64> {
    let mut worst = 0.0_f64;
    for (lambda, x, s) in samples {
        let p = HeatKernelParams::new(m, *s)?;
        let q = HeatKernelParams::new(m, lambda * s)?;
        let xs: Vec<f64> = x.iter().map(|v| lambda.sqrt() * v).collect();
        let lhs = heat_kernel(q, &xs)?.scalar_part();
        let rhs = lambda.powf(-(m as f64) / 2.0) * heat_kernel(p, x)?.scalar_part();
        if rhs != 0.0 {
            worst = worst.max((lhs - rhs).abs() / rhs.abs());
        }
    }
    Ok(worst)
}

/// `‖N_c(·, s)‖_1` on the grid.
pub fn heat_mass(params: HeatKernelParams, grid: &GridSpec) -> Result<f64> {
    let need = 8.0 * params.s.sqrt();
    if grid.half_width() < need {
        return Err(Error::InvalidGrid(format!(
            "half-width {} does not capture the mass (need >= {need})",
            grid.half_width()
        )));
    }
    lp_norm(&sample_heat_kernel(params, grid)?, 1.0)
}

/// Surface area `2π^{m/2} / Γ(m/2)` of the unit sphere, even `m`.
pub fn sphere_area(m: usize) -> f64 {
    let half = m / 2;
    let factorial: f64 = (1..half).map(|k| k as f64).product();
    2.0 * PI.powi(half as i32) / factorial
}

/// Composite Simpson rule on `[0, upper]` with `intervals` (even) panels.
pub fn simpson<F: Fn(f64) -> f64>(f: F, upper: f64, intervals: usize) -> f64 {
    let n = intervals + intervals % 2;
    let h = upper / n as f64;
    let mut s = f(0.0) + f(upper);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(i as f64 * h);
    }
    s * h / 3.0
}

/// `‖N_c(·, s)‖_1` by the radial reduction `|S^{m-1}| ∫_0^∞ N_c(r) r^{m-1} dr`.
pub fn heat_mass_radial(params: HeatKernelParams) -> f64 {
    let upper = 20.0 * params.s.sqrt();
    let m = params.m as i32;
    sphere_area(params.m)
        * simpson(
            |r| params.value_at_radius_sqr(r * r) * r.powi(m - 1),
            upper,
            20_000,
        )
}

/// `‖N_c(·,t) ∗ N_c(·,s) - (2π)^{-m/2} N_c(·, s+t)‖_∞` with the Clifford convolution.
pub fn heat_semigroup_check(m: usize, s: f64, t: f64, grid: &GridSpec) -> Result<f64> {
    let ps = HeatKernelParams::new(m, s)?;
    let pt = HeatKernelParams::new(m, t)?;
    let a = sample_heat_kernel(pt, grid)?;
    let b = sample_heat_kernel(ps, grid)?;
    let got = clifford_convolve(&a, &b)?;
    let want = sample_heat_kernel(HeatKernelParams::new(m, s + t)?, grid)?
        .scale((2.0 * PI).powf(-(m as f64) / 2.0));
    got.max_diff(&want)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_at_origin() {
        let p = HeatKernelParams::new(2, 0.5).unwrap();
        assert!(
            (heat_kernel(p, &[0.0, 0.0]).unwrap().scalar_part() - 1.0 / (2.0 * PI)).abs() < 1e-16
        );
        assert!(heat_kernel(p, &[40.0, 0.0]).unwrap().scalar_part() < 1e-300);
        assert!(HeatKernelParams::new(2, 0.0).is_err());
        assert!(HeatKernelParams::new(3, 1.0).is_err());
    }

    #[test]
    fn positivity_and_radiality() {
        let g = GridSpec::new(2, 6.0, 64).unwrap();
        let f = sample_heat_kernel(HeatKernelParams::new(2, 1.0).unwrap(), &g).unwrap();
        assert!((0..f.len()).all(|i| f.coeffs(i)[0] > 0.0));
        assert!(crate::grid::radial_deviation(&f) < 1e-14);
    }

    #[test]
    fn origin_laplacian_agrees() {
        let p = HeatKernelParams::new(4, 0.7).unwrap();
        let o = heat_origin_laplacian(p, 1e-3);
        assert!((o.finite_difference - o.analytic).abs() <= 1e-5 * o.analytic.abs());
    }

    #[test]
    fn sphere_areas() {
        assert!((sphere_area(2) - 2.0 * PI).abs() < 1e-15);
        assert!((sphere_area(4) - 2.0 * PI * PI).abs() < 1e-14);
    }

    #[test]
    fn radial_mass() {
        for m in [2, 4, 6] {
            let p = HeatKernelParams::new(m, 1.3).unwrap();
            assert!((heat_mass_radial(p) - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn under_resolved_grid() {
        let g = GridSpec::new(2, 10.0, 32).unwrap();
        let p = HeatKernelParams::new(2, 1.0).unwrap();
        assert!(matches!(
            heat_pde_residual(p, &g),
            Err(Error::UnderResolved { .. })
        ));
        assert!(heat_mass(
            HeatKernelParams::new(2, 4.0).unwrap(),
            &GridSpec::new(2, 6.0, 32).unwrap()
        )
        .is_err());
    }
}
