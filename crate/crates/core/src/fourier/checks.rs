use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::Multivector;
use crate::error::{Error, Result};
use crate::grid::{gaussian_weight_check, lp_norm, sample, GridSpec, SampledField};

use super::kernel::{kernel_symmetry_defect, KernelSign};
use super::{require_m2, transform, transform_at, transform_at_complex, TransformMethod};

/// `‖F_±(F_±(f)) - f‖_2 / ‖f‖_2`.
pub fn inverse_check(f: &SampledField, sign: KernelSign, method: TransformMethod) -> Result<f64> {
    let norm = lp_norm(f, 2.0)?;
    if norm == 0.0 {
        return Err(Error::ZeroField);
    }
    let once = transform(f, sign, method)?.field;
    let twice = transform(&once, sign, method)?.field;
    Ok(lp_norm(&twice.sub(f)?, 2.0)? / norm)
}

/// `‖F_±(f)‖_2 / ‖f‖_2`.
pub fn plancherel_check(
    f: &SampledField,
    sign: KernelSign,
    method: TransformMethod,
) -> Result<f64> {
    let norm = lp_norm(f, 2.0)?;
    if norm == 0.0 {
        return Err(Error::ZeroField);
    }
    let image = transform(f, sign, method)?.field;
    Ok(lp_norm(&image, 2.0)? / norm)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DilationReport {
    pub c: f64,
    /// `γ` in `F(f_c)(λ) = c^γ F(f)(λ/c)`; `None` when `c = 1`.
    pub fitted_exponent: Option<f64>,
    /// `|γ - m|`.
    pub distance_plus_m: Option<f64>,
    /// `|γ + m|`.
    pub distance_minus_m: Option<f64>,
    /// Largest relative deviation of a single sample from the fitted ratio.
    pub ratio_spread: f64,
    pub kernel_symmetry_defect: f64,
    pub samples: usize,
    pub passed: bool,
}

pub const DILATION_EXPONENT_TOL: f64 = 1e-4;
pub const KERNEL_SYMMETRY_TOL: f64 = 1e-12;

/// Measure the power of `c` relating `F(f(c·))` to `F(f)(·/c)`.
///
/// `F(f_c)` is computed on the grid; `F(f)` is evaluated off-grid at `λ/c`.
/// The check passes when the kernel symmetry `K(x, cy) = K(cx, y)` holds to
/// rounding and the fitted exponent matches `+m` or `-m`.
pub fn dilation_check<F>(
    f: F,
    grid: &GridSpec,
    c: f64,
    sign: KernelSign,
    method: TransformMethod,
) -> Result<DilationReport>
where
    F: Fn(&[f64]) -> Multivector + Sync + Send,
{
    require_m2(grid)?;
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "c",
            value: c,
            reason: "dilation factor must be positive",
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_d11a);
    let samples: Vec<([f64; 2], [f64; 2], f64)> = (0..1000)
        .map(|_| {
            (
                [rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0)],
                [rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0)],
                rng.gen_range(0.5..2.0),
            )
        })
        .collect();
    let symmetry = kernel_symmetry_defect(&samples, sign);
    if c == 1.0 {
        return Ok(DilationReport {
            c,
            fitted_exponent: None,
            distance_plus_m: None,
            distance_minus_m: None,
            ratio_spread: 0.0,
            kernel_symmetry_defect: symmetry,
            samples: 0,
            passed: symmetry <= KERNEL_SYMMETRY_TOL,
        });
    }
    let fc = sample(|x| f(&[c * x[0], c * x[1]]), grid);
    let plain = sample(&f, grid);
    let image = transform(&fc, sign, method)?.field;
    let peak = image.max_norm();
    if peak == 0.0 {
        return Err(Error::ZeroField);
    }
    // well-conditioned output nodes, thinned deterministically
    let strong: Vec<usize> = (0..image.len())
        .filter(|&i| image.node_norm(i) >= 1e-3 * peak)
        .collect();
    let stride = (strong.len() / 48).max(1);
    let mut num = 0.0;
    let mut den = 0.0;
    let mut pairs = Vec::new();
    for &node in strong.iter().step_by(stride) {
        let lam = grid.point(node);
        let a = image.value(node);
        let b = transform_at(&plain, [lam[0] / c, lam[1] / c], sign)?;
        num += a
            .coeffs()
            .iter()
            .zip(b.coeffs())
            .map(|(x, y)| x * y)
            .sum::<f64>();
        den += b.norm_sqr();
        pairs.push((a, b));
    }
    if den == 0.0 {
        return Err(Error::ZeroField);
    }
    let ratio = num / den;
    let spread = pairs
        .iter()
        .map(|(a, b)| (a - &b.scale(ratio)).norm() / a.norm())
        .fold(0.0, f64::max);
    let gamma = ratio.ln() / c.ln();
    let m = grid.dim() as f64;
    let dp = (gamma - m).abs();
    let dm = (gamma + m).abs();
    Ok(DilationReport {
        c,
        fitted_exponent: Some(gamma),
        distance_plus_m: Some(dp),
        distance_minus_m: Some(dm),
        ratio_spread: spread,
        kernel_symmetry_defect: symmetry,
        samples: pairs.len(),
        passed: symmetry <= KERNEL_SYMMETRY_TOL && dp.min(dm) <= DILATION_EXPONENT_TOL,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GrowthSample {
    pub re: [f64; 2],
    pub im: [f64; 2],
    /// `‖F(f)(z)‖_c e^{-‖z‖_c²/4a}`.
    pub ratio: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GrowthBoundReport {
    pub a: f64,
    /// Largest ratio over real arguments.
    pub c_emp_real: f64,
    /// Largest ratio over all complexified arguments.
    pub c_emp: f64,
    pub samples: Vec<GrowthSample>,
    /// `c_emp <= 10 c_emp_real`.
    pub bounded: bool,
}

/// Sample `‖F_±(f)(ξ + iη)‖_c e^{-‖z‖_c²/4a}` with `η` along `imag_dirs`.
///
/// Requires `e^{a‖x‖²} f` to be bounded (R-stable sup) on the grid.
pub fn growth_bound_check(
    f: &SampledField,
    a: f64,
    imag_dirs: &[[f64; 2]],
    sign: KernelSign,
) -> Result<GrowthBoundReport> {
    require_m2(f.grid())?;
    if !(a > 0.0) {
        return Err(Error::InvalidParameter {
            name: "a",
            value: a,
            reason: "weight rate must be positive",
        });
    }
    let weight = gaussian_weight_check(f, a);
    if !weight.sup_stable {
        return Err(Error::HypothesisFailed(format!(
            "e^{{a|x|^2}} f is not bounded on the grid (sup sweep {:?})",
            weight.sup
        )));
    }
    let mut reals = vec![[0.0, 0.0]];
    for r in [1.0, 2.0, 3.0, 4.0] {
        for q in 0..8 {
            let t = q as f64 * std::f64::consts::FRAC_PI_4;
            reals.push([r * t.cos(), r * t.sin()]);
        }
    }
    let mut samples = Vec::new();
    let mut eval = |re: [f64; 2], im: [f64; 2]| -> Result<f64> {
        let v = transform_at_complex(f, re, im, sign)?;
        let z2 = re[0] * re[0] + re[1] * re[1] + im[0] * im[0] + im[1] * im[1];
        let ratio = v.norm() * (-z2 / (4.0 * a)).exp();
        samples.push(GrowthSample { re, im, ratio });
        Ok(ratio)
    };
    let mut c_real = 0.0_f64;
    for &xi in &reals {
        c_real = c_real.max(eval(xi, [0.0, 0.0])?);
    }
    let mut c_all = c_real;
    for dir in imag_dirs {
        let len = dir[0].hypot(dir[1]);
        if len == 0.0 {
            continue;
        }
        for t in [0.5, 1.0, 1.5, 2.0] {
            let eta = [t * dir[0] / len, t * dir[1] / len];
            for &xi in &reals {
                c_all = c_all.max(eval(xi, eta)?);
            }
        }
    }
    Ok(GrowthBoundReport {
        a,
        c_emp_real: c_real,
        c_emp: c_all,
        samples,
        bounded: c_all <= 10.0 * c_real,
    })
}
