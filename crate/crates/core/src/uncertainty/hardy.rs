use serde::{Deserialize, Serialize};

use crate::algebra::Multivector;
use crate::error::Result;
use crate::fourier::{require_m2, transform, KernelSign, TransformMethod};
use crate::grid::SampledField;

use super::decay::{fit_gaussian_decay_with, DecayFit, DecayFitOptions};

/// `|pq - 1/4| <= CRITICAL_REL_TOL / 4` counts as the critical line.
pub const CRITICAL_REL_TOL: f64 = 1e-3;

/// Value floor for decay fits on transform outputs, which carry rounding
/// and truncation noise far below their peak.
pub const TRANSFORM_FIT_FLOOR: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Supercritical,
    Critical,
    Subcritical,
}

impl Regime {
    /// Classify a rate product against `1/4` with relative tolerance `tol`.
    pub fn classify(product: f64, tol: f64) -> Regime {
        let band = tol * 0.25;
        if (product - 0.25).abs() <= band {
            Regime::Critical
        } else if product > 0.25 {
            Regime::Supercritical
        } else {
            Regime::Subcritical
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Regime::Supercritical => "supercritical",
            Regime::Critical => "critical",
            Regime::Subcritical => "subcritical",
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HardyVerdict {
    pub p: f64,
    pub q: f64,
    pub product: f64,
    pub regime: Regime,
    pub fit_f: DecayFit,
    pub fit_transform: DecayFit,
    /// Least-squares `A` in `f ≈ A e^{-p‖x‖²}` (critical regime only).
    pub amplitude: Option<Multivector>,
    /// Grades with non-negligible content in `A`.
    pub amplitude_grades: Option<Vec<usize>>,
    /// `‖f - A e^{-p‖x‖²}‖_∞ / ‖f‖_∞` (critical regime only).
    pub gaussian_residual: Option<f64>,
}

/// Best `A` in `f ≈ A g` for the scalar profile `g`, and the relative sup residual.
pub fn fit_scalar_profile<G>(f: &SampledField, g: G) -> (Multivector, f64)
where
    G: Fn(&[f64]) -> f64,
{
    let grid = *f.grid();
    let blades = f.blades();
    let mut num = vec![0.0; blades];
    let mut den = 0.0;
    let profile: Vec<f64> = (0..f.len()).map(|i| g(&grid.point(i))).collect();
    for (i, &w) in profile.iter().enumerate() {
        den += w * w;
        for (k, v) in f.coeffs(i).iter().enumerate() {
            num[k] += w * v;
        }
    }
    let a: Vec<f64> = num
        .iter()
        .map(|v| if den > 0.0 { v / den } else { 0.0 })
        .collect();
    let peak = f.max_norm();
    let mut worst = 0.0_f64;
    for (i, &w) in profile.iter().enumerate() {
        let d = f
            .coeffs(i)
            .iter()
            .zip(&a)
            .map(|(v, ak)| (v - ak * w) * (v - ak * w))
            .sum::<f64>()
            .sqrt();
        worst = worst.max(d);
    }
    let amp = Multivector::from_coeffs(grid.dim(), a).expect("blade count");
    (amp, if peak > 0.0 { worst / peak } else { 0.0 })
}

/// Fit the Gaussian decay rates of `f` and `F_±(f)` and classify `pq`.
pub fn hardy_verify(
    f: &SampledField,
    sign: KernelSign,
    method: TransformMethod,
) -> Result<HardyVerdict> {
    require_m2(f.grid())?;
    let fit_f = fit_gaussian_decay_with(f, DecayFitOptions::default())?;
    let image = transform(f, sign, method)?.field;
    let fit_transform =
        fit_gaussian_decay_with(&image, DecayFitOptions::with_floor(TRANSFORM_FIT_FLOOR))?;
    let (p, q) = (fit_f.p, fit_transform.p);
    let product = p * q;
    let regime = Regime::classify(product, CRITICAL_REL_TOL);
    let (amplitude, amplitude_grades, gaussian_residual) = if regime == Regime::Critical {
        let (a, res) = fit_scalar_profile(f, |x| (-p * x.iter().map(|v| v * v).sum::<f64>()).exp());
        let grades = a.grades_present(1e-12 * a.norm());
        (Some(a), Some(grades), Some(res))
    } else {
        (None, None, None)
    };
    Ok(HardyVerdict {
        p,
        q,
        product,
        regime,
        fit_f,
        fit_transform,
        amplitude,
        amplitude_grades,
        gaussian_residual,
    })
}
