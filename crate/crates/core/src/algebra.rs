//! Arithmetic in the Clifford algebra Cl(0,m).
//!
//! The algebra is generated by `e_1, …, e_m` with `e_i e_j = -e_j e_i` for
//! `i != j` and `e_i^2 = -1`. A basis blade is identified by a bitmask
//! ([`BladeIndex`]): bit `i` set means `e_{i+1}` is a factor, and the factors
//! are always kept in ascending order. A [`Multivector`] stores one real
//! coefficient per blade, densely, indexed by mask.
//!
//! ```
//! use clifft::algebra::Multivector;
//!
//! let x = Multivector::vector(&[3.0, 4.0]);
//! let sq = x.gp(&x);
//! assert_eq!(sq.scalar_part(), -25.0);
//! assert!(sq.grade_project(2).unwrap().norm() == 0.0);
//! ```

use std::fmt;
use std::ops::{Add, AddAssign, Index, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported dimension. 2^8 = 256 coefficients per multivector.
pub const MAX_DIM: usize = 8;

/// A basis blade `e_A`, stored as a bitmask over the generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BladeIndex(pub u32);

impl BladeIndex {
    pub const SCALAR: BladeIndex = BladeIndex(0);

    /// The generator `e_{i+1}` (zero-based `i`).
    pub fn generator(i: usize) -> Self {
        BladeIndex(1 << i)
    }

    /// Blade `e_{i1} e_{i2} …` from zero-based generator indices; panics on repeats.
    pub fn from_generators(gens: &[usize]) -> Self {
        let mut mask = 0u32;
        for &g in gens {
            assert!(mask & (1 << g) == 0, "repeated generator in blade");
            mask |= 1 << g;
        }
        BladeIndex(mask)
    }

    pub fn mask(self) -> usize {
        self.0 as usize
    }

    pub fn grade(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Sign and mask of the product `e_self e_other`.
    pub fn product(self, other: BladeIndex) -> (f64, BladeIndex) {
        (blade_sign(self.0, other.0), BladeIndex(self.0 ^ other.0))
    }

    /// Label such as `1`, `e1`, `e12`, `e134`.
    pub fn label(self) -> String {
        if self.0 == 0 {
            return "1".to_string();
        }
        let mut s = String::from("e");
        for i in 0..32 {
            if self.0 & (1 << i) != 0 {
                s.push_str(&(i + 1).to_string());
            }
        }
        s
    }
}

impl fmt::Display for BladeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Euclidean norm of a coefficient slice, rescaled when squares would
/// underflow or overflow.
pub fn euclidean_norm(c: &[f64]) -> f64 {
    let big = c.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    if big == 0.0 || !big.is_finite() {
        return big;
    }
    if (1e-150..=1e150).contains(&big) {
        return c.iter().map(|v| v * v).sum::<f64>().sqrt();
    }
    big * c.iter().map(|v| (v / big) * (v / big)).sum::<f64>().sqrt()
}

/// Sign of `e_a e_b` after sorting into canonical order, signature (0,m).
///
/// Transpositions: for every generator of `b`, count the generators of `a`
/// with a higher index. Each generator shared by `a` and `b` contracts to -1.
#[inline]
pub fn blade_sign(a: u32, b: u32) -> f64 {
    let mut swaps = 0u32;
    let mut x = a >> 1;
    while x != 0 {
        swaps += (x & b).count_ones();
        x >>= 1;
    }
    swaps += (a & b).count_ones();
    if swaps & 1 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Dense multivector in Cl(0,m).
#[derive(Clone, PartialEq, Serialize, Deserialize)]
pub struct Multivector {
    m: usize,
    coeffs: Vec<f64>,
}

impl Multivector {
    pub fn zero(m: usize) -> Self {
        assert!(m <= MAX_DIM, "dimension {m} exceeds MAX_DIM");
        Multivector {
            m,
            coeffs: vec![0.0; 1 << m],
        }
    }

    pub fn scalar(m: usize, value: f64) -> Self {
        let mut v = Self::zero(m);
        v.coeffs[0] = value;
        v
    }

    pub fn blade(m: usize, blade: BladeIndex, value: f64) -> Self {
        let mut v = Self::zero(m);
        v.coeffs[blade.mask()] = value;
        v
    }

    /// `Σ x_i e_{i+1}`; the dimension is `x.len()`.
    pub fn vector(x: &[f64]) -> Self {
        let mut v = Self::zero(x.len());
        for (i, &xi) in x.iter().enumerate() {
            v.coeffs[1 << i] = xi;
        }
        v
    }

    pub fn from_coeffs(m: usize, coeffs: Vec<f64>) -> Result<Self> {
        if m > MAX_DIM {
            return Err(Error::UnsupportedDimension {
                m,
                reason: "exceeds MAX_DIM",
            });
        }
        if coeffs.len() != 1 << m {
            return Err(Error::DimensionMismatch {
                left: coeffs.len(),
                right: 1 << m,
            });
        }
        Ok(Multivector { m, coeffs })
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [f64] {
        &mut self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<f64> {
        self.coeffs
    }

    pub fn get(&self, blade: BladeIndex) -> f64 {
        self.coeffs[blade.mask()]
    }

    pub fn set(&mut self, blade: BladeIndex, value: f64) {
        self.coeffs[blade.mask()] = value;
    }

    pub fn scalar_part(&self) -> f64 {
        self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0.0)
    }

    /// True if every coefficient outside grade 1 is zero.
    pub fn is_vector(&self) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(mask, &c)| c == 0.0 || mask.count_ones() == 1)
    }

    /// Grade-1 coefficients `(x_1, …, x_m)`.
    pub fn vector_part(&self) -> Vec<f64> {
        (0..self.m).map(|i| self.coeffs[1 << i]).collect()
    }

    /// Clifford norm: Euclidean norm of the coefficient vector.
    pub fn norm(&self) -> f64 {
        euclidean_norm(&self.coeffs)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    pub fn scale(&self, s: f64) -> Multivector {
        Multivector {
            m: self.m,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Geometric product; panics on a dimension mismatch.
    pub fn gp(&self, other: &Multivector) -> Multivector {
        geometric_product(self, other).expect("geometric product of mismatched dimensions")
    }

    pub fn grade_project(&self, k: usize) -> Result<Multivector> {
        grade_project(self, k)
    }

    /// Largest absolute coefficient difference.
    pub fn max_abs_diff(&self, other: &Multivector) -> f64 {
        assert_eq!(self.m, other.m);
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Grades that carry a coefficient larger than `tol` in magnitude.
    pub fn grades_present(&self, tol: f64) -> Vec<usize> {
        let mut g: Vec<usize> = (0..=self.m)
            .filter(|&k| {
                self.coeffs
                    .iter()
                    .enumerate()
                    .any(|(mask, c)| mask.count_ones() as usize == k && c.abs() > tol)
            })
            .collect();
        g.dedup();
        g
    }
}

impl fmt::Debug for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (mask, &c) in self.coeffs.iter().enumerate() {
            if c == 0.0 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if mask == 0 {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}{}", BladeIndex(mask as u32))?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl Index<BladeIndex> for Multivector {
    type Output = f64;
    fn index(&self, b: BladeIndex) -> &f64 {
        &self.coeffs[b.mask()]
    }
}

impl Add for &Multivector {
    type Output = Multivector;
    fn add(self, rhs: &Multivector) -> Multivector {
        assert_eq!(self.m, rhs.m, "dimension mismatch");
        Multivector {
            m: self.m,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Add for Multivector {
    type Output = Multivector;
    fn add(self, rhs: Multivector) -> Multivector {
        &self + &rhs
    }
}

impl AddAssign<&Multivector> for Multivector {
    fn add_assign(&mut self, rhs: &Multivector) {
        assert_eq!(self.m, rhs.m, "dimension mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl Sub for &Multivector {
    type Output = Multivector;
    fn sub(self, rhs: &Multivector) -> Multivector {
        assert_eq!(self.m, rhs.m, "dimension mismatch");
        Multivector {
            m: self.m,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Sub for Multivector {
    type Output = Multivector;
    fn sub(self, rhs: Multivector) -> Multivector {
        &self - &rhs
    }
}

impl Neg for &Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        self.scale(-1.0)
    }
}

impl Neg for Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        self.scale(-1.0)
    }
}

impl Mul<f64> for &Multivector {
    type Output = Multivector;
    fn mul(self, s: f64) -> Multivector {
        self.scale(s)
    }
}

impl Mul<f64> for Multivector {
    type Output = Multivector;
    fn mul(self, s: f64) -> Multivector {
        self.scale(s)
    }
}

impl Mul for &Multivector {
    type Output = Multivector;
    fn mul(self, rhs: &Multivector) -> Multivector {
        self.gp(rhs)
    }
}

impl Mul for Multivector {
    type Output = Multivector;
    fn mul(self, rhs: Multivector) -> Multivector {
        self.gp(&rhs)
    }
}

/// Accumulate `a ⊗ b` into `out` on raw coefficient slices of length 2^m.
#[inline]
pub fn gp_accumulate(a: &[f64], b: &[f64], out: &mut [f64]) {
    debug_assert!(a.len() == b.len() && b.len() == out.len());
    for (ia, &ca) in a.iter().enumerate() {
        if ca == 0.0 {
            continue;
        }
        for (ib, &cb) in b.iter().enumerate() {
            if cb == 0.0 {
                continue;
            }
            out[ia ^ ib] += blade_sign(ia as u32, ib as u32) * ca * cb;
        }
    }
}

/// Geometric product `a ⊗ b`.
pub fn geometric_product(a: &Multivector, b: &Multivector) -> Result<Multivector> {
    if a.m != b.m {
        return Err(Error::DimensionMismatch {
            left: a.m,
            right: b.m,
        });
    }
    let mut out = Multivector::zero(a.m);
    gp_accumulate(&a.coeffs, &b.coeffs, &mut out.coeffs);
    Ok(out)
}

/// Keep only the grade-`k` coefficients.
pub fn grade_project(a: &Multivector, k: usize) -> Result<Multivector> {
    if k > a.m {
        return Err(Error::GradeOutOfRange { grade: k, m: a.m });
    }
    let mut out = a.clone();
    for (mask, c) in out.coeffs.iter_mut().enumerate() {
        if mask.count_ones() as usize != k {
            *c = 0.0;
        }
    }
    Ok(out)
}

pub fn clifford_norm(a: &Multivector) -> f64 {
    a.norm()
}

fn require_vector(x: &Multivector) -> Result<()> {
    if x.is_vector() {
        Ok(())
    } else {
        Err(Error::NotAVector)
    }
}

fn require_vectors(x: &Multivector, y: &Multivector) -> Result<()> {
    if x.m != y.m {
        return Err(Error::DimensionMismatch {
            left: x.m,
            right: y.m,
        });
    }
    require_vector(x)?;
    require_vector(y)
}

/// `<x, y> = Σ x_j y_j`, returned as a scalar multivector.
pub fn inner_product(x: &Multivector, y: &Multivector) -> Result<Multivector> {
    require_vectors(x, y)?;
    let dot = (0..x.m).map(|i| x.coeffs[1 << i] * y.coeffs[1 << i]).sum();
    Ok(Multivector::scalar(x.m, dot))
}

/// `-(xy + yx)/2`: the inner product computed through the geometric product.
pub fn inner_product_via_gp(x: &Multivector, y: &Multivector) -> Result<Multivector> {
    require_vectors(x, y)?;
    Ok((&x.gp(y) + &y.gp(x)).scale(-0.5))
}

/// `x ∧ y = Σ_{j<k} e_j e_k (x_j y_k - x_k y_j)`.
pub fn wedge_product(x: &Multivector, y: &Multivector) -> Result<Multivector> {
    require_vectors(x, y)?;
    let mut out = Multivector::zero(x.m);
    for j in 0..x.m {
        for k in (j + 1)..x.m {
            let (xj, xk) = (x.coeffs[1 << j], x.coeffs[1 << k]);
            let (yj, yk) = (y.coeffs[1 << j], y.coeffs[1 << k]);
            out.coeffs[(1 << j) | (1 << k)] = xj * yk - xk * yj;
        }
    }
    Ok(out)
}

/// `(xy - yx)/2`: the wedge product computed through the geometric product.
pub fn wedge_product_via_gp(x: &Multivector, y: &Multivector) -> Result<Multivector> {
    require_vectors(x, y)?;
    Ok((&x.gp(y) - &y.gp(x)).scale(0.5))
}

/// Element of `Cl(0,m) ⊗ C`, stored as real and imaginary multivector parts.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMultivector {
    pub re: Multivector,
    pub im: Multivector,
}

impl ComplexMultivector {
    pub fn zero(m: usize) -> Self {
        ComplexMultivector {
            re: Multivector::zero(m),
            im: Multivector::zero(m),
        }
    }

    pub fn from_real(re: Multivector) -> Self {
        let m = re.dim();
        ComplexMultivector {
            re,
            im: Multivector::zero(m),
        }
    }

    /// Complexified vector `ξ + iη`.
    pub fn vector(re: &[f64], im: &[f64]) -> Self {
        ComplexMultivector {
            re: Multivector::vector(re),
            im: Multivector::vector(im),
        }
    }

    pub fn dim(&self) -> usize {
        self.re.dim()
    }

    /// Bilinear extension of the geometric product.
    pub fn gp(&self, other: &ComplexMultivector) -> ComplexMultivector {
        ComplexMultivector {
            re: &self.re.gp(&other.re) - &self.im.gp(&other.im),
            im: &self.re.gp(&other.im) + &self.im.gp(&other.re),
        }
    }

    /// `sqrt(Σ_A |c_A|^2)` over complex coefficients.
    pub fn norm(&self) -> f64 {
        (self.re.norm_sqr() + self.im.norm_sqr()).sqrt()
    }
}
