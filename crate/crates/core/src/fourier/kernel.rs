//! The two-dimensional Clifford-Fourier kernel.
//!
//! For m = 2 the kernel is a rotor in the even subalgebra:
//! `K_-(x, y) = cos θ + e12 sin θ` with `θ = x1 y2 - x2 y1`, and `K_+` is
//! obtained by `θ -> -θ`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{BladeIndex, ComplexMultivector, Multivector};
use crate::error::{Error, Result};

pub const E12: BladeIndex = BladeIndex(0b11);

/// Selects `K_+` or `K_-`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KernelSign {
    Plus,
    Minus,
}

impl KernelSign {
    /// Multiplier applied to `sin θ` in the e12 slot.
    pub fn sin_factor(self) -> f64 {
        match self {
            KernelSign::Minus => 1.0,
            KernelSign::Plus => -1.0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            KernelSign::Plus => "plus",
            KernelSign::Minus => "minus",
        }
    }
}

impl std::str::FromStr for KernelSign {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "plus" | "+" => Ok(KernelSign::Plus),
            "minus" | "-" => Ok(KernelSign::Minus),
            other => Err(format!(
                "unknown kernel sign `{other}` (expected plus|minus)"
            )),
        }
    }
}

#[inline]
pub(crate) fn phase(x: [f64; 2], y: [f64; 2]) -> f64 {
    x[0] * y[1] - x[1] * y[0]
}

/// `K_±(x, y)` for m = 2.
pub fn kernel_m2(x: [f64; 2], y: [f64; 2], sign: KernelSign) -> Multivector {
    let (s, c) = phase(x, y).sin_cos();
    let mut k = Multivector::scalar(2, c);
    k.set(E12, sign.sin_factor() * s);
    k
}

/// Kernel at a complexified second argument `z = ξ + iη`.
///
/// `θ = x1 z2 - x2 z1` becomes complex and cos/sin are continued analytically;
/// the complex unit is the one of `R^m ⊗ C`, independent of `e12`.
pub fn kernel_m2_complex(
    x: [f64; 2],
    re: [f64; 2],
    im: [f64; 2],
    sign: KernelSign,
) -> ComplexMultivector {
    let theta = Complex64::new(phase(x, re), phase(x, im));
    let (c, s) = (theta.cos(), theta.sin());
    let f = sign.sin_factor();
    let mut out = ComplexMultivector::zero(2);
    out.re.set(BladeIndex::SCALAR, c.re);
    out.im.set(BladeIndex::SCALAR, c.im);
    out.re.set(E12, f * s.re);
    out.im.set(E12, f * s.im);
    out
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KernelBoundReport {
    /// `max ‖K(x,y)‖_c / e^{‖x‖‖y‖}` over the samples.
    pub max_ratio: f64,
    /// Constant the ratio is compared against (1 for m = 2).
    pub constant: f64,
    pub passed: bool,
}

/// Check `‖K_±(x, y)‖_c <= C e^{‖x‖_c ‖y‖_c}` on the given sample pairs.
pub fn kernel_bound_check(
    m: usize,
    samples: &[([f64; 2], [f64; 2])],
    sign: KernelSign,
) -> Result<KernelBoundReport> {
    if m != 2 {
        return Err(Error::UnsupportedDimension {
            m,
            reason: "the kernel is only implemented in closed form for m = 2",
        });
    }
    let constant = 1.0;
    let max_ratio = samples
        .iter()
        .map(|&(x, y)| {
            let nx = x[0].hypot(x[1]);
            let ny = y[0].hypot(y[1]);
            kernel_m2(x, y, sign).norm() / (nx * ny).exp()
        })
        .fold(0.0, f64::max);
    Ok(KernelBoundReport {
        max_ratio,
        constant,
        passed: max_ratio <= constant * (1.0 + 4.0 * f64::EPSILON),
    })
}

/// `max ‖K(x, c y) - K(c x, y)‖_c` over `(x, y, c)` samples.
pub fn kernel_symmetry_defect(samples: &[([f64; 2], [f64; 2], f64)], sign: KernelSign) -> f64 {
    samples
        .iter()
        .map(|&(x, y, c)| {
            let a = kernel_m2(x, [c * y[0], c * y[1]], sign);
            let b = kernel_m2([c * x[0], c * x[1]], y, sign);
            (&a - &b).norm()
        })
        .fold(0.0, f64::max)
}
