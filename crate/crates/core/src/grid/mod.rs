//! Uniform midpoint grids on `[-R, R]^m`, multivector fields sampled on
//! them, quadrature norms and radial convolution.

mod convolve;
pub mod io;

pub use convolve::{clifford_convolve, radial_convolve, radial_deviation, radial_profile};

use serde::{Deserialize, Serialize};

use crate::algebra::{euclidean_norm, Multivector, MAX_DIM};
use crate::error::{Error, Result};
use crate::par;

/// Grid geometry: dimension `m`, half-width `R`, `N` points per axis.
///
/// Nodes sit at cell midpoints `x_i = -R + (i + 1/2) h` with `h = 2R/N`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    m: usize,
    half_width: f64,
    points: usize,
}

impl GridSpec {
    pub fn new(m: usize, half_width: f64, points: usize) -> Result<Self> {
        if m == 0 || m > MAX_DIM {
            return Err(Error::InvalidGrid(format!(
                "dimension {m} not in 1..={MAX_DIM}"
            )));
        }
        if !(half_width > 0.0 && half_width.is_finite()) {
            return Err(Error::InvalidGrid(format!(
                "half-width {half_width} must be positive"
            )));
        }
        if points < 8 || points % 2 != 0 {
            return Err(Error::InvalidGrid(format!(
                "points per axis {points} must be even and at least 8"
            )));
        }
        let total = (points as u128).checked_pow(m as u32).unwrap_or(u128::MAX);
        if total > (1u128 << 34) {
            return Err(Error::InvalidGrid(format!(
                "{points}^{m} nodes is too many"
            )));
        }
        Ok(GridSpec {
            m,
            half_width,
            points,
        })
    }

    /// The acceptance grid: m = 2, R = 10, N = 256.
    pub fn default_2d() -> Self {
        GridSpec::new(2, 10.0, 256).expect("valid default grid")
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn step(&self) -> f64 {
        2.0 * self.half_width / self.points as f64
    }

    pub fn node_count(&self) -> usize {
        self.points.pow(self.m as u32)
    }

    /// Quadrature weight `h^m`.
    pub fn cell_volume(&self) -> f64 {
        self.step().powi(self.m as i32)
    }

    /// Coordinate of index `i` along any axis.
    pub fn coord(&self, i: usize) -> f64 {
        -self.half_width + (i as f64 + 0.5) * self.step()
    }

    pub fn axis_coords(&self) -> Vec<f64> {
        (0..self.points).map(|i| self.coord(i)).collect()
    }

    /// Row-major multi-index of a flat node index (axis 0 slowest).
    pub fn multi_index(&self, mut flat: usize) -> Vec<usize> {
        let mut idx = vec![0; self.m];
        for k in (0..self.m).rev() {
            idx[k] = flat % self.points;
            flat /= self.points;
        }
        idx
    }

    pub fn flat_index(&self, idx: &[usize]) -> usize {
        idx.iter().fold(0, |acc, &i| acc * self.points + i)
    }

    /// Write the coordinates of node `flat` into `out`.
    pub fn fill_point(&self, mut flat: usize, out: &mut [f64]) {
        for k in (0..self.m).rev() {
            out[k] = self.coord(flat % self.points);
            flat /= self.points;
        }
    }

    pub fn point(&self, flat: usize) -> Vec<f64> {
        let mut x = vec![0.0; self.m];
        self.fill_point(flat, &mut x);
        x
    }

    pub fn radius_sqr(&self, flat: usize) -> f64 {
        let mut flat = flat;
        let mut r2 = 0.0;
        for _ in 0..self.m {
            let c = self.coord(flat % self.points);
            r2 += c * c;
            flat /= self.points;
        }
        r2
    }

    /// Max-norm of node `flat`: `max_k |x_k|`.
    pub fn sup_coord(&self, flat: usize) -> f64 {
        let mut flat = flat;
        let mut s = 0.0_f64;
        for _ in 0..self.m {
            s = s.max(self.coord(flat % self.points).abs());
            flat /= self.points;
        }
        s
    }

    /// Same lattice with a different half-width.
    pub fn with_half_width(&self, half_width: f64) -> Result<Self> {
        GridSpec::new(self.m, half_width, self.points)
    }

    pub fn with_points(&self, points: usize) -> Result<Self> {
        GridSpec::new(self.m, self.half_width, points)
    }
}

/// Multivector samples, one per grid node, stored node-major.
#[derive(Clone, PartialEq)]
pub struct SampledField {
    grid: GridSpec,
    data: Vec<f64>,
}

impl std::fmt::Debug for SampledField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SampledField")
            .field("grid", &self.grid)
            .field("nodes", &self.len())
            .finish()
    }
}

impl SampledField {
    pub fn zeros(grid: GridSpec) -> Self {
        SampledField {
            grid,
            data: vec![0.0; grid.node_count() << grid.dim()],
        }
    }

    /// Wrap node-major coefficient data (`N^m * 2^m` values).
    pub fn from_raw(grid: GridSpec, data: Vec<f64>) -> Result<Self> {
        let want = grid.node_count() << grid.dim();
        if data.len() != want {
            return Err(Error::Format(format!(
                "expected {want} coefficients, got {}",
                data.len()
            )));
        }
        Ok(SampledField { grid, data })
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn blades(&self) -> usize {
        1 << self.grid.dim()
    }

    pub fn len(&self) -> usize {
        self.grid.node_count()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn raw(&self) -> &[f64] {
        &self.data
    }

    pub fn raw_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn coeffs(&self, node: usize) -> &[f64] {
        let b = self.blades();
        &self.data[node * b..(node + 1) * b]
    }

    pub fn value(&self, node: usize) -> Multivector {
        Multivector::from_coeffs(self.grid.dim(), self.coeffs(node).to_vec())
            .expect("consistent blade count")
    }

    pub fn node_norm(&self, node: usize) -> f64 {
        euclidean_norm(self.coeffs(node))
    }

    /// One blade component as a real array over nodes.
    pub fn component(&self, blade: usize) -> Vec<f64> {
        let b = self.blades();
        self.data.iter().skip(blade).step_by(b).copied().collect()
    }

    pub fn set_component(&mut self, blade: usize, values: &[f64]) {
        let b = self.blades();
        assert_eq!(values.len(), self.len());
        for (node, v) in values.iter().enumerate() {
            self.data[node * b + blade] = *v;
        }
    }

    /// True if the component is zero at every node.
    pub fn component_is_zero(&self, blade: usize) -> bool {
        let b = self.blades();
        self.data.iter().skip(blade).step_by(b).all(|&c| c == 0.0)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&c| c == 0.0)
    }

    pub fn scale(&self, s: f64) -> SampledField {
        SampledField {
            grid: self.grid,
            data: self.data.iter().map(|c| c * s).collect(),
        }
    }

    /// `a * self + other`.
    pub fn axpy(&self, a: f64, other: &SampledField) -> Result<SampledField> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        Ok(SampledField {
            grid: self.grid,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(x, y)| a * x + y)
                .collect(),
        })
    }

    pub fn sub(&self, other: &SampledField) -> Result<SampledField> {
        other.axpy(-1.0, self)
    }

    /// Pointwise map of node values, given node coordinates.
    pub fn map_nodes<F>(&self, f: F) -> SampledField
    where
        F: Fn(&[f64], &[f64], &mut [f64]) + Sync + Send,
    {
        let grid = self.grid;
        let b = self.blades();
        let mut out = SampledField::zeros(grid);
        let src = &self.data;
        par::for_each_chunk_mut(&mut out.data, b * par::BLOCK, |chunk_idx, chunk| {
            let mut x = vec![0.0; grid.dim()];
            for (local, dst) in chunk.chunks_mut(b).enumerate() {
                let node = chunk_idx * par::BLOCK + local;
                grid.fill_point(node, &mut x);
                f(&x, &src[node * b..(node + 1) * b], dst);
            }
        });
        out
    }

    /// Largest node-wise Clifford-norm difference.
    pub fn max_diff(&self, other: &SampledField) -> Result<f64> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        let b = self.blades();
        Ok(par::max_indices(self.len(), |i| {
            self.data[i * b..(i + 1) * b]
                .iter()
                .zip(&other.data[i * b..(i + 1) * b])
                .map(|(x, y)| (x - y) * (x - y))
                .sum::<f64>()
                .sqrt()
        }))
    }

    pub fn max_norm(&self) -> f64 {
        par::max_indices(self.len(), |i| self.node_norm(i))
    }
}

/// Evaluate `f` at every grid node.
pub fn sample<F>(f: F, grid: &GridSpec) -> SampledField
where
    F: Fn(&[f64]) -> Multivector + Sync + Send,
{
    let grid = *grid;
    let b = 1usize << grid.dim();
    let mut out = SampledField::zeros(grid);
    par::for_each_chunk_mut(&mut out.data, b * par::BLOCK, |chunk_idx, chunk| {
        let mut x = vec![0.0; grid.dim()];
        for (local, dst) in chunk.chunks_mut(b).enumerate() {
            grid.fill_point(chunk_idx * par::BLOCK + local, &mut x);
            let v = f(&x);
            assert_eq!(
                v.dim(),
                grid.dim(),
                "sampled function has the wrong dimension"
            );
            dst.copy_from_slice(v.coeffs());
        }
    });
    out
}

/// Exponent of an `L^p` norm: finite `p >= 1`, or `∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NormOrder {
    Finite(f64),
    Infinity,
}

impl NormOrder {
    pub fn new(p: f64) -> Result<Self> {
        if p == f64::INFINITY {
            Ok(NormOrder::Infinity)
        } else if p >= 1.0 && p.is_finite() {
            Ok(NormOrder::Finite(p))
        } else {
            Err(Error::InvalidParameter {
                name: "p",
                value: p,
                reason: "norm order must be >= 1 or infinity",
            })
        }
    }
}

/// `(∫ ‖f(x)‖_c^p dx)^{1/p}` by the midpoint rule; `sup ‖f‖_c` for `p = ∞`.
pub fn lp_norm(field: &SampledField, p: f64) -> Result<f64> {
    Ok(lp_norm_with(field, NormOrder::new(p)?, None))
}

/// `L^p` norm restricted to nodes with `max_k |x_k| <= cube` when `cube` is set.
pub fn lp_norm_with(field: &SampledField, p: NormOrder, cube: Option<f64>) -> f64 {
    let grid = *field.grid();
    let inside = |i: usize| cube.is_none_or(|c| grid.sup_coord(i) <= c);
    match p {
        NormOrder::Infinity => par::max_indices(field.len(), |i| {
            if inside(i) {
                field.node_norm(i)
            } else {
                0.0
            }
        }),
        NormOrder::Finite(p) => {
            let s = par::sum_indices(field.len(), |i| {
                if !inside(i) {
                    return 0.0;
                }
                let n = field.node_norm(i);
                if p == 1.0 {
                    n
                } else if p == 2.0 {
                    n * n
                } else {
                    n.powf(p)
                }
            });
            (s * grid.cell_volume()).powf(1.0 / p)
        }
    }
}

/// `∫ (1 + ‖y‖_c)^{(m-2)/2} ‖f(y)‖_c dy` by the midpoint rule.
pub fn b_norm(field: &SampledField) -> f64 {
    let grid = *field.grid();
    let expo = (grid.dim() as f64 - 2.0) / 2.0;
    let s = par::sum_indices(field.len(), |i| {
        let n = field.node_norm(i);
        if n == 0.0 {
            return 0.0;
        }
        if expo == 0.0 {
            n
        } else {
            (1.0 + grid.radius_sqr(i).sqrt()).powf(expo) * n
        }
    });
    s * grid.cell_volume()
}

/// Sub-cube fractions `|x|_∞ <= s R` used for truncation sweeps.
pub const SWEEP_FRACTIONS: [f64; 3] = [0.6, 0.8, 1.0];
/// A sweep is stable if its last value exceeds its first by at most 1%.
pub const STABLE_GROWTH: f64 = 1.01;
/// A sweep diverges if its last value is at least twice its first.
pub const DIVERGENT_GROWTH: f64 = 2.0;

pub fn sweep_cubes(grid: &GridSpec) -> [f64; 3] {
    SWEEP_FRACTIONS.map(|s| s * grid.half_width())
}

/// `last / first` of a sweep; 1 for an all-zero sweep, ∞ if only the first is zero.
pub fn sweep_growth(values: &[f64]) -> f64 {
    let first = values[0];
    let last = values[values.len() - 1];
    if last == 0.0 {
        1.0
    } else if first == 0.0 {
        f64::INFINITY
    } else {
        last / first
    }
}

/// Sup and `L^1` sweeps of `e^{a‖x‖²} ‖f(x)‖_c` over [`sweep_cubes`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GaussianWeightCheck {
    pub a: f64,
    pub sup: [f64; 3],
    pub l1: [f64; 3],
    pub sup_stable: bool,
    pub l1_stable: bool,
}

impl GaussianWeightCheck {
    /// Either sweep is stable.
    pub fn holds(&self) -> bool {
        self.sup_stable || self.l1_stable
    }
}

pub fn gaussian_weight_check(field: &SampledField, a: f64) -> GaussianWeightCheck {
    let grid = *field.grid();
    let weighted = field.map_nodes(|x, src, dst| {
        let r2: f64 = x.iter().map(|v| v * v).sum();
        let n = euclidean_norm(src);
        dst.fill(0.0);
        // subnormal samples carry no relative precision
        dst[0] = if n < f64::MIN_POSITIVE {
            0.0
        } else {
            (a * r2 + n.ln()).exp()
        };
    });
    let cubes = sweep_cubes(&grid);
    let sup = cubes.map(|c| lp_norm_with(&weighted, NormOrder::Infinity, Some(c)));
    let l1 = cubes.map(|c| lp_norm_with(&weighted, NormOrder::Finite(1.0), Some(c)));
    GaussianWeightCheck {
        a,
        sup,
        l1,
        sup_stable: sweep_growth(&sup) <= STABLE_GROWTH,
        l1_stable: sweep_growth(&l1) <= STABLE_GROWTH,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn weight_sweeps_separate_rates() {
        let g = GridSpec::new(2, 8.0, 64).unwrap();
        let f = sample(
            |x| Multivector::scalar(2, (-0.5 * (x[0] * x[0] + x[1] * x[1])).exp()),
            &g,
        );
        let ok = gaussian_weight_check(&f, 0.5);
        assert!(ok.sup_stable && ok.holds());
        let bad = gaussian_weight_check(&f, 0.6);
        assert!(!bad.sup_stable && !bad.l1_stable);
        assert!(sweep_growth(&bad.sup) >= DIVERGENT_GROWTH);
        assert_eq!(sweep_growth(&[0.0, 0.0, 0.0]), 1.0);
    }

    fn gaussian(x: &[f64]) -> Multivector {
        let r2: f64 = x.iter().map(|v| v * v).sum();
        Multivector::scalar(x.len(), (-r2 / 2.0).exp())
    }

    #[test]
    fn grid_validation() {
        assert!(GridSpec::new(2, 10.0, 256).is_ok());
        assert!(GridSpec::new(2, 10.0, 7).is_err());
        assert!(GridSpec::new(2, 10.0, 9).is_err());
        assert!(GridSpec::new(2, 0.0, 16).is_err());
        assert!(GridSpec::new(0, 1.0, 16).is_err());
        let g = GridSpec::new(2, 10.0, 256).unwrap();
        assert_eq!(g.node_count(), 65536);
        assert_eq!(g.step(), 20.0 / 256.0);
        assert_eq!(g.coord(0), -10.0 + 10.0 / 256.0);
    }

    #[test]
    fn index_round_trip() {
        let g = GridSpec::new(3, 1.0, 8).unwrap();
        for flat in [0, 7, 8, 63, 500, 511] {
            assert_eq!(g.flat_index(&g.multi_index(flat)), flat);
        }
        let x = g.point(g.flat_index(&[1, 2, 3]));
        assert_eq!(x, vec![g.coord(1), g.coord(2), g.coord(3)]);
    }

    #[test]
    fn sample_constant_and_readback() {
        let g = GridSpec::new(2, 3.0, 16).unwrap();
        let f = sample(|x| Multivector::scalar(x.len(), 1.0), &g);
        assert!((0..f.len()).all(|i| f.value(i) == Multivector::scalar(2, 1.0)));
        let h = |x: &[f64]| Multivector::vector(&[x[0] * x[1], x[0] - x[1]]);
        let s = sample(h, &g);
        let node = g.flat_index(&[3, 11]);
        assert_eq!(s.value(node), h(&g.point(node)));
    }

    #[test]
    fn gaussian_boundary_values_are_negligible() {
        let g = GridSpec::new(2, 8.0, 64).unwrap();
        let f = sample(gaussian, &g);
        let edge = g.flat_index(&[0, 32]);
        assert!(f.node_norm(edge) < 1e-13);
    }

    #[test]
    fn l2_norm_of_gaussian() {
        let g = GridSpec::default_2d();
        let f = sample(gaussian, &g);
        // ∫ e^{-|x|^2} dx = π in two dimensions
        assert!((lp_norm(&f, 2.0).unwrap() - PI.sqrt()).abs() < 1e-6);
        // nearest nodes to the origin sit at ‖x‖² = h²/2
        let h = g.step();
        assert!((lp_norm(&f, f64::INFINITY).unwrap() - (-h * h / 4.0).exp()).abs() < 1e-15);
    }

    #[test]
    fn zero_field_norms() {
        let g = GridSpec::new(2, 3.0, 16).unwrap();
        let z = SampledField::zeros(g);
        for p in [1.0, 2.0, 3.5, f64::INFINITY] {
            assert_eq!(lp_norm(&z, p).unwrap(), 0.0);
        }
        assert_eq!(b_norm(&z), 0.0);
        assert!(lp_norm(&z, 0.5).is_err());
    }

    #[test]
    fn b_norm_is_l1_in_two_dimensions() {
        let g = GridSpec::new(2, 8.0, 64).unwrap();
        let f = sample(
            |x| Multivector::vector(&[x[0], 1.0]).scale((-x[0] * x[0] - x[1] * x[1]).exp()),
            &g,
        );
        assert!((b_norm(&f) - lp_norm(&f, 1.0).unwrap()).abs() < 1e-14);
    }

    #[test]
    fn quadrature_converges_spectrally() {
        let a = GridSpec::new(2, 8.0, 128).unwrap();
        let b = GridSpec::new(2, 8.0, 256).unwrap();
        let fa = lp_norm(&sample(gaussian, &a), 2.0).unwrap();
        let fb = lp_norm(&sample(gaussian, &b), 2.0).unwrap();
        assert!((fa - fb).abs() <= 1e-8);
    }

    #[test]
    fn weight_check_ignores_underflowed_tail() {
        let g = GridSpec::default_2d();
        let f = sample(
            |x| Multivector::scalar(2, 8.0 * (-4.0 * (x[0] * x[0] + x[1] * x[1])).exp()),
            &g,
        );
        let w = gaussian_weight_check(&f, 4.0);
        assert!(
            w.sup_stable && w.sup.iter().all(|v| (v - 8.0).abs() < 1e-9),
            "{:?}",
            w.sup
        );
    }
}
