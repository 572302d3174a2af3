//! Polynomials in `x ∈ R^m` with `Cl(0, m)` coefficients and the operators
//! `∂_x`, `Δ_x`, `Γ_x`.
//!
//! A [`PolyField`] stores `Σ_α x^α c_α`. Vector factors produced by the
//! operators act on coefficients from the left, so `∂_x (x^α c) = Σ_i α_i
//! x^{α - e_i} e_i c`.

mod laguerre;
mod monogenic;
mod psi;

pub use laguerre::{laguerre_eval, LaguerreParams};
pub use monogenic::{monogenic_basis, monomials_of_degree, NULLSPACE_REL_TOL};
pub use psi::{psi_basis_element, Parity, PsiElement};

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{BladeIndex, Multivector, MAX_DIM};
use crate::error::{Error, Result};

pub type Exponent = Vec<u32>;

#[derive(Clone, PartialEq)]
pub struct PolyField {
    m: usize,
    terms: BTreeMap<Exponent, Multivector>,
}

impl PolyField {
    pub fn zero(m: usize) -> Self {
        assert!((1..=MAX_DIM).contains(&m), "dimension {m} out of range");
        PolyField {
            m,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Multivector) -> Self {
        let mut p = PolyField::zero(c.dim());
        p.add_term(vec![0; c.dim()], c);
        p
    }

    /// `x^α c`.
    pub fn monomial(alpha: Exponent, c: Multivector) -> Result<Self> {
        if alpha.len() != c.dim() {
            return Err(Error::DimensionMismatch {
                left: alpha.len(),
                right: c.dim(),
            });
        }
        let mut p = PolyField::zero(c.dim());
        p.add_term(alpha, c);
        Ok(p)
    }

    /// The coordinate function `x_i` (0-based).
    pub fn coordinate(m: usize, i: usize) -> Self {
        let mut alpha = vec![0; m];
        alpha[i] = 1;
        PolyField::monomial(alpha, Multivector::scalar(m, 1.0)).expect("consistent dimension")
    }

    /// `‖x‖² = Σ x_i²`.
    pub fn radius_sqr(m: usize) -> Self {
        let mut p = PolyField::zero(m);
        for i in 0..m {
            let mut alpha = vec![0; m];
            alpha[i] = 2;
            p.add_term(alpha, Multivector::scalar(m, 1.0));
        }
        p
    }

    pub fn from_terms<I>(m: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponent, Multivector)>,
    {
        let mut p = PolyField::zero(m);
        for (alpha, c) in terms {
            if alpha.len() != m || c.dim() != m {
                return Err(Error::DimensionMismatch {
                    left: m,
                    right: if alpha.len() != m {
                        alpha.len()
                    } else {
                        c.dim()
                    },
                });
            }
            p.add_term(alpha, c);
        }
        Ok(p)
    }

    /// Add `x^α c`, dropping the term if it cancels to zero.
    pub fn add_term(&mut self, alpha: Exponent, c: Multivector) {
        debug_assert_eq!(alpha.len(), self.m);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&alpha) {
            Some(existing) => {
                *existing += &c;
                if existing.is_zero() {
                    self.terms.remove(&alpha);
                }
            }
            None => {
                self.terms.insert(alpha, c);
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Multivector)> {
        self.terms.iter()
    }

    pub fn coeff(&self, alpha: &[u32]) -> Option<&Multivector> {
        self.terms.get(alpha)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|a| total(a)).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|a| total(a));
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn evaluate(&self, x: &[f64]) -> Multivector {
        assert_eq!(x.len(), self.m, "point has the wrong dimension");
        let mut out = Multivector::zero(self.m);
        for (alpha, c) in &self.terms {
            let w: f64 = alpha
                .iter()
                .zip(x)
                .map(|(&a, &xi)| xi.powi(a as i32))
                .product();
            out += &c.scale(w);
        }
        out
    }

    pub fn scale(&self, s: f64) -> PolyField {
        let mut p = PolyField::zero(self.m);
        for (alpha, c) in &self.terms {
            p.add_term(alpha.clone(), c.scale(s));
        }
        p
    }

    /// `a p` with the multivector `a` on the left.
    pub fn left_mul(&self, a: &Multivector) -> PolyField {
        let mut p = PolyField::zero(self.m);
        for (alpha, c) in &self.terms {
            p.add_term(alpha.clone(), a.gp(c));
        }
        p
    }

    /// `p a` with the multivector `a` on the right.
    pub fn right_mul(&self, a: &Multivector) -> PolyField {
        let mut p = PolyField::zero(self.m);
        for (alpha, c) in &self.terms {
            p.add_term(alpha.clone(), c.gp(a));
        }
        p
    }

    /// Product of polynomials, coefficients multiplied in order `self · other`.
    pub fn mul(&self, other: &PolyField) -> PolyField {
        assert_eq!(self.m, other.m);
        let mut p = PolyField::zero(self.m);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let alpha = a.iter().zip(b).map(|(x, y)| x + y).collect();
                p.add_term(alpha, ca.gp(cb));
            }
        }
        p
    }

    pub fn add(&self, other: &PolyField) -> PolyField {
        assert_eq!(self.m, other.m);
        let mut p = self.clone();
        for (alpha, c) in &other.terms {
            p.add_term(alpha.clone(), c.clone());
        }
        p
    }

    pub fn sub(&self, other: &PolyField) -> PolyField {
        self.add(&other.scale(-1.0))
    }

    /// Largest coefficient difference over all monomials and blades.
    pub fn max_abs_diff(&self, other: &PolyField) -> f64 {
        self.sub(other)
            .terms
            .values()
            .flat_map(|c| c.coeffs().iter().map(|v| v.abs()))
            .fold(0.0, f64::max)
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.terms
            .values()
            .flat_map(|c| c.coeffs().iter().map(|v| v.abs()))
            .fold(0.0, f64::max)
    }

    /// `∂p/∂x_i` (scalar derivative, coefficients untouched).
    pub fn partial(&self, i: usize) -> PolyField {
        let mut p = PolyField::zero(self.m);
        for (alpha, c) in &self.terms {
            if alpha[i] == 0 {
                continue;
            }
            let mut beta = alpha.clone();
            beta[i] -= 1;
            p.add_term(beta, c.scale(alpha[i] as f64));
        }
        p
    }

    /// Multiply by the coordinate `x_i`.
    pub fn times_coordinate(&self, i: usize) -> PolyField {
        let mut p = PolyField::zero(self.m);
        for (alpha, c) in &self.terms {
            let mut beta = alpha.clone();
            beta[i] += 1;
            p.add_term(beta, c.clone());
        }
        p
    }
}

fn total(alpha: &[u32]) -> usize {
    alpha.iter().map(|&a| a as usize).sum()
}

impl fmt::Debug for PolyField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(alpha, c)| format!("({c}) x^{alpha:?}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Dirac operator `∂_x = Σ_i e_i ∂_{x_i}`.
pub fn dirac(p: &PolyField) -> PolyField {
    let m = p.dim();
    let mut out = PolyField::zero(m);
    for i in 0..m {
        let e = Multivector::blade(m, BladeIndex::generator(i), 1.0);
        out = out.add(&p.partial(i).left_mul(&e));
    }
    out
}

/// Laplacian `Σ_i ∂²_{x_i}`, coefficient-wise.
pub fn laplace(p: &PolyField) -> PolyField {
    let mut out = PolyField::zero(p.dim());
    for i in 0..p.dim() {
        out = out.add(&p.partial(i).partial(i));
    }
    out
}

/// Angular operator `Γ_x = -Σ_{j<k} e_j e_k (x_j ∂_{x_k} - x_k ∂_{x_j})`.
pub fn gamma_op(p: &PolyField) -> PolyField {
    let m = p.dim();
    let mut out = PolyField::zero(m);
    for j in 0..m {
        for k in (j + 1)..m {
            let rot = p
                .partial(k)
                .times_coordinate(j)
                .sub(&p.partial(j).times_coordinate(k));
            let ejk = Multivector::blade(m, BladeIndex::from_generators(&[j, k]), -1.0);
            out = out.add(&rot.left_mul(&ejk));
        }
    }
    out
}
