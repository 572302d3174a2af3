//! The Clifford-Fourier transform
//! `F_±(f)(y) = (2π)^{-m/2} ∫ K_±(x, y) f(x) dx` for m = 2.
//!
//! Two evaluation paths compute the same midpoint-rule sum on a
//! [`GridSpec`](crate::grid::GridSpec): [`transform_quadrature`] sums over
//! all nodes for each output node (`O(N^4)`), [`transform_fft`] factors the
//! kernel into classical plane waves and uses chirp-z sums (`O(N^2 log N)`).
//! The output grid is the input grid.

mod checks;
pub mod fast;
pub mod kernel;
mod quadrature;

pub use checks::{
    dilation_check, growth_bound_check, inverse_check, plancherel_check, DilationReport,
    GrowthBoundReport, GrowthSample,
};
pub use kernel::{
    kernel_bound_check, kernel_m2, kernel_m2_complex, kernel_symmetry_defect, KernelBoundReport,
    KernelSign, E12,
};

use serde::{Deserialize, Serialize};

use crate::algebra::{ComplexMultivector, Multivector};
use crate::error::{Error, Result};
use crate::grid::{GridSpec, SampledField};

/// `(2π)^{-m/2}` for m = 2.
pub const NORMALIZATION_2D: f64 = 1.0 / (2.0 * std::f64::consts::PI);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TransformMethod {
    Quadrature,
    Fft,
}

impl TransformMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            TransformMethod::Quadrature => "quadrature",
            TransformMethod::Fft => "fft",
        }
    }
}

impl std::str::FromStr for TransformMethod {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "quadrature" => Ok(TransformMethod::Quadrature),
            "fft" => Ok(TransformMethod::Fft),
            other => Err(format!(
                "unknown transform method `{other}` (expected quadrature|fft)"
            )),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TransformMeta {
    pub grid: GridSpec,
    pub sign: KernelSign,
    /// Integration domain is truncated to the cube `[-R, R]^2`.
    pub truncation_radius: f64,
}

#[derive(Debug, Clone)]
pub struct TransformResult {
    pub field: SampledField,
    pub method: TransformMethod,
    pub meta: TransformMeta,
}

pub fn require_m2(grid: &GridSpec) -> Result<()> {
    if grid.dim() == 2 {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension {
            m: grid.dim(),
            reason: "the transform is implemented for m = 2 only",
        })
    }
}

fn wrap(field: SampledField, method: TransformMethod, sign: KernelSign) -> TransformResult {
    let grid = *field.grid();
    TransformResult {
        field,
        method,
        meta: TransformMeta {
            grid,
            sign,
            truncation_radius: grid.half_width(),
        },
    }
}

/// Direct midpoint quadrature, left-multiplying `f(x)` by `K_±(x, y)`.
pub fn transform_quadrature(f: &SampledField, sign: KernelSign) -> Result<TransformResult> {
    Ok(wrap(
        quadrature::transform(f, sign)?,
        TransformMethod::Quadrature,
        sign,
    ))
}

/// Fast path exploiting `K_- = cos θ + e12 sin θ` with `θ = x·(y2, -y1)`.
pub fn transform_fft(f: &SampledField, sign: KernelSign) -> Result<TransformResult> {
    Ok(wrap(fast::transform(f, sign)?, TransformMethod::Fft, sign))
}

pub fn transform(
    f: &SampledField,
    sign: KernelSign,
    method: TransformMethod,
) -> Result<TransformResult> {
    match method {
        TransformMethod::Quadrature => transform_quadrature(f, sign),
        TransformMethod::Fft => transform_fft(f, sign),
    }
}

/// `F_±(f)(y)` at one real point `y` (off-grid allowed).
pub fn transform_at(f: &SampledField, y: [f64; 2], sign: KernelSign) -> Result<Multivector> {
    quadrature::transform_at(f, y, sign)
}

/// `F_±(f)(z)` at a complexified point `z = re + i·im`.
pub fn transform_at_complex(
    f: &SampledField,
    re: [f64; 2],
    im: [f64; 2],
    sign: KernelSign,
) -> Result<ComplexMultivector> {
    quadrature::transform_at_complex(f, re, im, sign)
}
