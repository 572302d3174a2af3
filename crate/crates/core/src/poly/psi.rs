use serde::{Deserialize, Serialize};

use crate::algebra::Multivector;
use crate::error::{Error, Result};
use crate::grid::{sample, GridSpec, SampledField};

use super::laguerre::recurrence;
use super::{monogenic_basis, LaguerreParams, PolyField};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

/// `ψ_{2j,k,l} = L_j^{m/2+k-1}(‖x‖²) M_k^{(l)} e^{-‖x‖²/2}` (even) or
/// `ψ_{2j+1,k,l} = L_j^{m/2+k}(‖x‖²) x M_k^{(l)} e^{-‖x‖²/2}` (odd).
#[derive(Debug, Clone)]
pub struct PsiElement {
    pub j: usize,
    pub k: u32,
    pub l: usize,
    pub parity: Parity,
    pub laguerre: LaguerreParams,
    pub monogenic: PolyField,
}

pub fn psi_basis_element(
    m: usize,
    j: usize,
    k: u32,
    l: usize,
    parity: Parity,
) -> Result<PsiElement> {
    let mut basis = monogenic_basis(m, k)?;
    if l >= basis.len() {
        return Err(Error::IndexOutOfRange {
            index: l,
            len: basis.len(),
        });
    }
    let half = m as f64 / 2.0 + k as f64;
    let alpha = match parity {
        Parity::Even => half - 1.0,
        Parity::Odd => half,
    };
    Ok(PsiElement {
        j,
        k,
        l,
        parity,
        laguerre: LaguerreParams::new(j, alpha)?,
        monogenic: basis.swap_remove(l),
    })
}

impl PsiElement {
    pub fn dim(&self) -> usize {
        self.monogenic.dim()
    }

    /// Index `n` of `ψ_n`: `2j` or `2j + 1`.
    pub fn order(&self) -> usize {
        match self.parity {
            Parity::Even => 2 * self.j,
            Parity::Odd => 2 * self.j + 1,
        }
    }

    pub fn eval(&self, x: &[f64]) -> Multivector {
        let r2: f64 = x.iter().map(|v| v * v).sum();
        let radial = recurrence(self.laguerre.j(), self.laguerre.alpha(), r2) * (-r2 / 2.0).exp();
        let mk = self.monogenic.evaluate(x);
        let v = match self.parity {
            Parity::Even => mk,
            Parity::Odd => Multivector::vector(x).gp(&mk),
        };
        v.scale(radial)
    }

    pub fn sample(&self, grid: &GridSpec) -> Result<SampledField> {
        if grid.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                left: grid.dim(),
                right: self.dim(),
            });
        }
        Ok(sample(|x| self.eval(x), grid))
    }
}
