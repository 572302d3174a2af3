use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::algebra::Multivector;
use crate::error::{Error, Result};
use crate::fourier::{require_m2, transform, KernelSign, TransformMethod};
use crate::grid::{sample, GridSpec, SampledField};
use crate::poly::{Exponent, PolyField};

/// Nodes where `e^{-‖y‖²/4δ}` falls below this are outside the fit region.
pub const TRUST_FLOOR: f64 = 1e-10;
/// Terms contributing less than this fraction of `max ‖F‖` are negligible.
pub const TERM_REL_TOL: f64 = 1e-6;

#[derive(Debug, Clone)]
pub struct PolyGaussReport {
    pub delta: f64,
    pub degree_p: usize,
    /// `Q` with negligible terms removed.
    pub q_fit: PolyField,
    pub degree_q: Option<usize>,
    /// `max ‖F - Q e^{-‖y‖²/4δ}‖_c / max ‖F‖_c` over the trust region.
    pub residual: f64,
    /// Largest relative contribution of a degree `deg P + 1` term when fitting one degree higher.
    pub excess_degree_weight: f64,
    pub degree_match: bool,
    pub trust_nodes: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolyGaussSummary {
    pub delta: f64,
    pub degree_p: usize,
    pub degree_q: Option<usize>,
    pub residual: f64,
    pub excess_degree_weight: f64,
    pub degree_match: bool,
}

impl PolyGaussReport {
    pub fn summary(&self) -> PolyGaussSummary {
        PolyGaussSummary {
            delta: self.delta,
            degree_p: self.degree_p,
            degree_q: self.degree_q,
            residual: self.residual,
            excess_degree_weight: self.excess_degree_weight,
            degree_match: self.degree_match,
        }
    }
}

fn exponents_up_to(d: usize) -> Vec<Exponent> {
    let mut out = Vec::new();
    for total in 0..=d as u32 {
        for i in (0..=total).rev() {
            out.push(vec![i, total - i]);
        }
    }
    out
}

struct Fit {
    coeffs: Vec<(Exponent, Multivector)>,
    /// per term: `max_y |y^α| w(y)` over the trust region
    reach: Vec<f64>,
    residual: f64,
}

fn fit_degree(
    image: &SampledField,
    nodes: &[usize],
    weights: &[f64],
    degree: usize,
) -> Result<Fit> {
    let grid = image.grid();
    let exps = exponents_up_to(degree);
    let rows = nodes.len();
    let cols = exps.len();
    let mut a = DMatrix::<f64>::zeros(rows, cols);
    for (r, (&node, &w)) in nodes.iter().zip(weights).enumerate() {
        let y = grid.point(node);
        for (c, e) in exps.iter().enumerate() {
            a[(r, c)] = w * y[0].powi(e[0] as i32) * y[1].powi(e[1] as i32);
        }
    }
    let scale: Vec<f64> = (0..cols)
        .map(|c| a.column(c).amax().max(f64::MIN_POSITIVE))
        .collect();
    for (c, s) in scale.iter().enumerate() {
        a.column_mut(c).scale_mut(1.0 / s);
    }
    let svd = a.clone().svd(true, true);
    let mut coeff_cols = Vec::with_capacity(4);
    for blade in 0..4 {
        let b = DVector::from_iterator(rows, nodes.iter().map(|&n| image.coeffs(n)[blade]));
        let x = svd
            .solve(&b, 1e-14)
            .map_err(|e| Error::Numerical(format!("least squares failed: {e}")))?;
        coeff_cols.push(x);
    }
    let peak = image.max_norm();
    let mut worst = 0.0_f64;
    for r in 0..rows {
        let mut d2 = 0.0;
        for (blade, x) in coeff_cols.iter().enumerate() {
            let fitted: f64 = (0..cols).map(|c| a[(r, c)] * x[c]).sum();
            let diff = image.coeffs(nodes[r])[blade] - fitted;
            d2 += diff * diff;
        }
        worst = worst.max(d2.sqrt());
    }
    let coeffs = exps
        .iter()
        .enumerate()
        .map(|(c, e)| {
            let v: Vec<f64> = coeff_cols.iter().map(|x| x[c] / scale[c]).collect();
            (e.clone(), Multivector::from_coeffs(2, v).expect("m = 2"))
        })
        .collect();
    Ok(Fit {
        coeffs,
        reach: scale,
        residual: worst / peak,
    })
}

/// Transform `P e^{-δ‖x‖²}` and fit `Q` in `F_±(·) ≈ Q e^{-‖y‖²/4δ}`.
pub fn polynomial_gaussian_image(
    p: &PolyField,
    delta: f64,
    grid: &GridSpec,
    sign: KernelSign,
    method: TransformMethod,
) -> Result<PolyGaussReport> {
    require_m2(grid)?;
    if p.dim() != 2 {
        return Err(Error::DimensionMismatch {
            left: p.dim(),
            right: 2,
        });
    }
    let degree_p = p.degree().ok_or(Error::ZeroField)?;
    if degree_p > 4 {
        return Err(Error::InvalidParameter {
            name: "degree",
            value: degree_p as f64,
            reason: "polynomial degree must be at most 4",
        });
    }
    if !(0.125..=2.0).contains(&delta) {
        return Err(Error::InvalidParameter {
            name: "delta",
            value: delta,
            reason: "Gaussian rate must lie in [1/8, 2]",
        });
    }
    let f = sample(
        |x| {
            p.evaluate(x)
                .scale((-delta * (x[0] * x[0] + x[1] * x[1])).exp())
        },
        grid,
    );
    let image = transform(&f, sign, method)?.field;
    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    for i in 0..image.len() {
        let w = (-grid.radius_sqr(i) / (4.0 * delta)).exp();
        if w >= TRUST_FLOOR {
            nodes.push(i);
            weights.push(w);
        }
    }
    let need = 100.max(4 * exponents_up_to(degree_p + 1).len());
    if nodes.len() < need {
        return Err(Error::InsufficientNodes {
            found: nodes.len(),
            required: need,
        });
    }
    let peak = image.max_norm();
    let base = fit_degree(&image, &nodes, &weights, degree_p)?;
    let mut q_fit = PolyField::zero(2);
    for ((e, c), reach) in base.coeffs.iter().zip(&base.reach) {
        if c.norm() * reach >= TERM_REL_TOL * peak {
            q_fit.add_term(e.clone(), c.clone());
        }
    }
    let degree_q = q_fit.degree();
    let higher = fit_degree(&image, &nodes, &weights, degree_p + 1)?;
    let excess_degree_weight = higher
        .coeffs
        .iter()
        .zip(&higher.reach)
        .filter(|((e, _), _)| e.iter().sum::<u32>() as usize == degree_p + 1)
        .map(|((_, c), reach)| c.norm() * reach / peak)
        .fold(0.0, f64::max);
    Ok(PolyGaussReport {
        delta,
        degree_p,
        degree_match: degree_q == Some(degree_p) && excess_degree_weight < TERM_REL_TOL,
        q_fit,
        degree_q,
        residual: base.residual,
        excess_degree_weight,
        trust_nodes: nodes.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponent_enumeration() {
        assert_eq!(exponents_up_to(1), vec![vec![0, 0], vec![1, 0], vec![0, 1]]);
        assert_eq!(exponents_up_to(3).len(), 10);
    }

    #[test]
    fn gaussian_maps_to_constant() {
        let grid = GridSpec::default_2d();
        let one = PolyField::constant(Multivector::scalar(2, 1.0));
        let r =
            polynomial_gaussian_image(&one, 0.5, &grid, KernelSign::Minus, TransformMethod::Fft)
                .unwrap();
        assert!(r.residual <= 1e-6);
        assert!(r.degree_match);
        assert!(r.q_fit.max_abs_diff(&one) < 1e-8);
    }
}
