use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::SampledField;

/// `‖f(x)‖_c ≈ C e^{-p ‖x‖²}` fitted on an annulus.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecayFit {
    pub c: f64,
    pub p: f64,
    /// `max |ℓ - ℓ̂| / max(|ℓ̂|, 1)` with `ℓ = log ‖f‖_c`.
    pub residual: f64,
    pub nodes: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecayFitOptions {
    /// Nodes with `‖f‖_c < floor · max ‖f‖_c` are excluded.
    pub floor: f64,
    /// Nodes with `‖x‖ < min_radius` are excluded.
    pub min_radius: f64,
    pub min_nodes: usize,
}

impl Default for DecayFitOptions {
    fn default() -> Self {
        DecayFitOptions {
            floor: 1e-12,
            min_radius: 1.0,
            min_nodes: 100,
        }
    }
}

impl DecayFitOptions {
    pub fn with_floor(floor: f64) -> Self {
        DecayFitOptions {
            floor,
            ..Default::default()
        }
    }
}

pub fn fit_gaussian_decay(f: &SampledField) -> Result<DecayFit> {
    fit_gaussian_decay_with(f, DecayFitOptions::default())
}

/// Least-squares line through `(‖x‖², log ‖f(x)‖_c)` on the annulus.
pub fn fit_gaussian_decay_with(f: &SampledField, opts: DecayFitOptions) -> Result<DecayFit> {
    let peak = f.max_norm();
    if peak == 0.0 {
        return Err(Error::ZeroField);
    }
    let grid = f.grid();
    let r2_min = opts.min_radius * opts.min_radius;
    let points: Vec<(f64, f64)> = (0..f.len())
        .filter_map(|i| {
            let r2 = grid.radius_sqr(i);
            let v = f.node_norm(i);
            (r2 >= r2_min && v >= opts.floor * peak && v > 0.0).then(|| (r2, v.ln()))
        })
        .collect();
    if points.len() < opts.min_nodes {
        return Err(Error::InsufficientNodes {
            found: points.len(),
            required: opts.min_nodes,
        });
    }
    let n = points.len() as f64;
    let mt = points.iter().map(|p| p.0).sum::<f64>() / n;
    let ml = points.iter().map(|p| p.1).sum::<f64>() / n;
    let (mut stt, mut stl) = (0.0, 0.0);
    for &(t, l) in &points {
        stt += (t - mt) * (t - mt);
        stl += (t - mt) * (l - ml);
    }
    if stt == 0.0 {
        return Err(Error::Numerical(
            "decay fit annulus has a single radius".into(),
        ));
    }
    let slope = stl / stt;
    let intercept = ml - slope * mt;
    let residual = points
        .iter()
        .map(|&(t, l)| {
            let fit = intercept + slope * t;
            (l - fit).abs() / fit.abs().max(1.0)
        })
        .fold(0.0, f64::max);
    Ok(DecayFit {
        c: intercept.exp(),
        p: -slope,
        residual,
        nodes: points.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Multivector;
    use crate::grid::{sample, GridSpec};

    #[test]
    fn exact_model_is_recovered() {
        let g = GridSpec::default_2d();
        let f = sample(
            |x| Multivector::scalar(2, 3.0 * (-2.0 * (x[0] * x[0] + x[1] * x[1])).exp()),
            &g,
        );
        let fit = fit_gaussian_decay(&f).unwrap();
        assert!((fit.c - 3.0).abs() < 1e-9);
        assert!((fit.p - 2.0).abs() < 1e-9);
        assert!(fit.residual <= 1e-8);
    }

    #[test]
    fn failures() {
        let g = GridSpec::new(2, 10.0, 16).unwrap();
        assert!(matches!(
            fit_gaussian_decay(&SampledField::zeros(g)),
            Err(Error::ZeroField)
        ));
        let f = sample(
            |x| Multivector::scalar(2, (-(x[0] * x[0] + x[1] * x[1])).exp()),
            &g,
        );
        assert!(matches!(
            fit_gaussian_decay(&f),
            Err(Error::InsufficientNodes { .. })
        ));
    }
}
