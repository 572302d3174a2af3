use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::algebra::Multivector;
use crate::error::{Error, Result};
use crate::fourier::{require_m2, transform, KernelSign, TransformMethod};
use crate::grid::{
    gaussian_weight_check, sweep_cubes, sweep_growth, GaussianWeightCheck, SampledField,
    DIVERGENT_GROWTH, STABLE_GROWTH,
};
use crate::heat::HeatKernelParams;

use super::decay::{fit_gaussian_decay_with, DecayFit, DecayFitOptions};
use super::hardy::{fit_scalar_profile, Regime, TRANSFORM_FIT_FLOOR};

/// A functional at or below this value is reported as zero.
pub const FUNCTIONAL_ZERO_TOL: f64 = 1e-6;
/// Relative tolerance on `ab = 1/4` for the critical case.
pub const CRITICAL_AB_TOL: f64 = 1e-9;
/// Largest relative sup residual for `f ≈ C N_c(·, b)`.
pub const HEAT_MULTIPLE_TOL: f64 = 1e-6;

/// How the sweep over nested cubes behaves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepBehaviour {
    /// Last value within 1% of the first.
    Stable,
    /// Last value at least twice the first.
    Divergent,
    Inconclusive,
}

impl SweepBehaviour {
    /// Classify a sweep; values at or below `zero_tol` throughout count as stable.
    pub fn of(values: &[f64], zero_tol: f64) -> SweepBehaviour {
        let g = sweep_growth(values);
        if values.iter().all(|v| v.abs() <= zero_tol) || g <= STABLE_GROWTH {
            SweepBehaviour::Stable
        } else if g >= DIVERGENT_GROWTH {
            SweepBehaviour::Divergent
        } else {
            SweepBehaviour::Inconclusive
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MiyachiFunctional {
    pub b: f64,
    pub lambda: f64,
    /// Integral over the full grid cube.
    pub value: f64,
    /// Cube half-widths of the sweep.
    pub cubes: [f64; 3],
    pub sweep: [f64; 3],
    pub growth: f64,
    pub behaviour: SweepBehaviour,
    /// Decay fit of `‖g‖_c` used for the tail.
    pub decay: Option<DecayFit>,
    /// Estimated integral outside the grid cube from the fitted decay;
    /// `∞` when the fitted integrand does not decay.
    pub tail_estimate: Option<f64>,
}

impl MiyachiFunctional {
    pub fn finite(&self) -> bool {
        self.behaviour == SweepBehaviour::Stable && self.tail_estimate.is_none_or(f64::is_finite)
    }
}

/// `∫ log⁺(e^{b‖y‖²} ‖g(y)‖_c / λ) dy` by the midpoint rule over nested cubes.
pub fn miyachi_functional(g: &SampledField, b: f64, lambda: f64) -> Result<MiyachiFunctional> {
    for (name, v) in [("b", b), ("lambda", lambda)] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::InvalidParameter {
                name,
                value: v,
                reason: "must be positive",
            });
        }
    }
    let grid = *g.grid();
    let cubes = sweep_cubes(&grid);
    let vol = grid.cell_volume();
    let mut sweep = [0.0; 3];
    for i in 0..g.len() {
        let n = g.node_norm(i);
        if n == 0.0 {
            continue;
        }
        // log⁺ taken in log space
        let v = (b * grid.radius_sqr(i) + n.ln() - lambda.ln()).max(0.0);
        if v == 0.0 {
            continue;
        }
        let s = grid.sup_coord(i);
        for (k, c) in cubes.iter().enumerate() {
            if s <= *c {
                sweep[k] += v * vol;
            }
        }
    }
    let decay = fit_gaussian_decay_with(g, DecayFitOptions::with_floor(TRANSFORM_FIT_FLOOR)).ok();
    let tail_estimate = decay.map(|d| tail(d, b, lambda, grid.half_width()));
    Ok(MiyachiFunctional {
        b,
        lambda,
        value: sweep[2],
        cubes,
        sweep,
        growth: sweep_growth(&sweep),
        behaviour: SweepBehaviour::of(&sweep, FUNCTIONAL_ZERO_TOL),
        decay,
        tail_estimate,
    })
}

/// `2π ∫_R^∞ log⁺((C/λ) e^{(b - q) r²}) r dr` for the fitted decay `C e^{-q r²}`.
fn tail(d: DecayFit, b: f64, lambda: f64, radius: f64) -> f64 {
    let rate = d.p - b;
    let level = (d.c / lambda).ln();
    // rates equal to fit precision count as equal
    if rate.abs() <= 1e-6 * b {
        return if level <= 1e-9 { 0.0 } else { f64::INFINITY };
    }
    if rate < 0.0 {
        return f64::INFINITY;
    }
    // integrand is positive for r² < level / rate
    let edge = level / rate;
    let r2 = radius * radius;
    if edge <= r2 {
        return 0.0;
    }
    // ∫ (level - rate t) π dt over t in [R², edge]
    PI * (level * (edge - r2) - 0.5 * rate * (edge * edge - r2 * r2))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum MiyachiConclusion {
    /// Only `f = 0` is admissible.
    Zero,
    /// `f = C N_c(·, b)`, so `F_±(f) = (2π)^{-1} C e^{-b‖y‖²}`; the functional
    /// is finite iff the transform-side amplitude `|C| / 2π` is at most `λ`.
    GaussianMultiple {
        c: Multivector,
        magnitude: f64,
        transform_amplitude: f64,
        within_bound: bool,
    },
    /// Members of the `P N_c(·, δ)` family satisfy both conditions.
    CounterexampleFamily,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MiyachiReport {
    pub a: f64,
    pub b: f64,
    pub lambda: f64,
    pub regime: Regime,
    pub hypothesis: GaussianWeightCheck,
    pub functional: MiyachiFunctional,
    pub integral: f64,
    pub finite_flag: bool,
    pub conclusion: MiyachiConclusion,
    /// Relative sup residual of `f ≈ C N_c(·, b)` in the critical case.
    pub heat_fit_residual: Option<f64>,
    pub input_is_zero: bool,
    /// The measured behaviour matches the outcome predicted for this regime.
    pub consistent: bool,
}

fn ab_regime(a: f64, b: f64) -> Regime {
    Regime::classify(a * b, CRITICAL_AB_TOL)
}

/// Verify the hypothesis on `f`, evaluate the functional on `F_±(f)`, and
/// compare with the outcome predicted by the sign of `ab - 1/4`.
pub fn miyachi_verify(
    f: &SampledField,
    a: f64,
    b: f64,
    lambda: f64,
    sign: KernelSign,
    method: TransformMethod,
) -> Result<MiyachiReport> {
    require_m2(f.grid())?;
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "a",
            value: a,
            reason: "must be positive",
        });
    }
    let hypothesis = gaussian_weight_check(f, a);
    if !hypothesis.holds() {
        return Err(Error::HypothesisFailed(format!(
            "e^{{a|x|^2}} f has neither a stable sup ({:?}) nor a stable L1 norm ({:?})",
            hypothesis.sup, hypothesis.l1
        )));
    }
    let image = transform(f, sign, method)?.field;
    let functional = miyachi_functional(&image, b, lambda)?;
    let finite_flag = functional.finite();
    let input_is_zero = f.is_zero();
    let regime = ab_regime(a, b);
    let mut heat_fit_residual = None;
    let (conclusion, consistent) = match regime {
        Regime::Supercritical => (
            MiyachiConclusion::Zero,
            input_is_zero || functional.behaviour == SweepBehaviour::Divergent,
        ),
        Regime::Critical => {
            let heat = HeatKernelParams::new(2, b)?;
            let (c, res) =
                fit_scalar_profile(f, |x| heat.value_at_radius_sqr(x[0] * x[0] + x[1] * x[1]));
            heat_fit_residual = Some(res);
            let magnitude = c.norm();
            let transform_amplitude = magnitude / (2.0 * PI);
            let within_bound = transform_amplitude <= lambda * (1.0 + 1e-9);
            let ok = input_is_zero || (res <= HEAT_MULTIPLE_TOL && within_bound && finite_flag);
            (
                MiyachiConclusion::GaussianMultiple {
                    c,
                    magnitude,
                    transform_amplitude,
                    within_bound,
                },
                ok,
            )
        }
        Regime::Subcritical => (MiyachiConclusion::CounterexampleFamily, finite_flag),
    };
    Ok(MiyachiReport {
        a,
        b,
        lambda,
        regime,
        hypothesis,
        integral: functional.value,
        functional,
        finite_flag,
        conclusion,
        heat_fit_residual,
        input_is_zero,
        consistent,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CorollaryReport {
    pub a: f64,
    pub b: f64,
    pub r: f64,
    /// `ab >= 1/4` forces `f = 0`.
    pub forces_zero: bool,
    pub cubes: [f64; 3],
    pub sweep: [f64; 3],
    pub integral: f64,
    pub growth: f64,
    pub behaviour: SweepBehaviour,
    pub input_is_zero: bool,
    pub consistent: bool,
}

/// `∫ ‖F_±(f)(y)‖_c^r e^{r b ‖y‖²} dy` over nested cubes.
pub fn weighted_transform_check(
    f: &SampledField,
    a: f64,
    b: f64,
    r: f64,
    sign: KernelSign,
    method: TransformMethod,
) -> Result<CorollaryReport> {
    require_m2(f.grid())?;
    for (name, v) in [("a", a), ("b", b), ("r", r)] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::InvalidParameter {
                name,
                value: v,
                reason: "must be positive",
            });
        }
    }
    let grid = *f.grid();
    let image = transform(f, sign, method)?.field;
    let cubes = sweep_cubes(&grid);
    let vol = grid.cell_volume();
    let mut sweep = [0.0; 3];
    for i in 0..image.len() {
        let n = image.node_norm(i);
        if n == 0.0 {
            continue;
        }
        let v = (r * (n.ln() + b * grid.radius_sqr(i))).exp() * vol;
        let s = grid.sup_coord(i);
        for (k, c) in cubes.iter().enumerate() {
            if s <= *c {
                sweep[k] += v;
            }
        }
    }
    let forces_zero = ab_regime(a, b) != Regime::Subcritical;
    let behaviour = SweepBehaviour::of(&sweep, 0.0);
    let input_is_zero = f.is_zero();
    let consistent = if input_is_zero {
        sweep[2] == 0.0
    } else if forces_zero {
        behaviour == SweepBehaviour::Divergent
    } else {
        behaviour == SweepBehaviour::Stable
    };
    Ok(CorollaryReport {
        a,
        b,
        r,
        forces_zero,
        cubes,
        integral: sweep[2],
        sweep,
        growth: sweep_growth(&sweep),
        behaviour,
        input_is_zero,
        consistent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{sample, GridSpec};

    #[test]
    fn exact_gaussian_gives_zero() {
        let grid = GridSpec::default_2d();
        let (b, lambda) = (0.25, 2.0);
        let g = sample(
            |y| Multivector::scalar(2, lambda * (-b * (y[0] * y[0] + y[1] * y[1])).exp()),
            &grid,
        );
        let m = miyachi_functional(&g, b, lambda).unwrap();
        assert!(m.value <= FUNCTIONAL_ZERO_TOL, "{}", m.value);
        assert!(m.finite(), "{m:?}");
    }

    #[test]
    fn monotone_in_lambda_and_b() {
        let grid = GridSpec::new(2, 6.0, 64).unwrap();
        let g = sample(
            |y| Multivector::scalar(2, 3.0 * (-0.3 * (y[0] * y[0] + y[1] * y[1])).exp()),
            &grid,
        );
        let v = |b, l| miyachi_functional(&g, b, l).unwrap().value;
        assert!(v(0.2, 1.0) >= v(0.2, 2.0) && v(0.2, 2.0) >= v(0.2, 4.0));
        assert!(v(0.1, 1.0) <= v(0.2, 1.0) && v(0.2, 1.0) <= v(0.4, 1.0));
    }

    #[test]
    fn tail_model() {
        let d = DecayFit {
            c: 1.0,
            p: 0.5,
            residual: 0.0,
            nodes: 100,
        };
        assert_eq!(tail(d, 0.25, 1.0, 10.0), 0.0);
        assert_eq!(tail(d, 0.75, 1.0, 10.0), f64::INFINITY);
        let big = DecayFit { c: 1e60, ..d };
        assert!(tail(big, 0.25, 1.0, 10.0) > 0.0);
    }
}
