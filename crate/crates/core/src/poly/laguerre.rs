use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Generalized Laguerre polynomial `L_j^α`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LaguerreParams {
    j: usize,
    alpha: f64,
}

impl LaguerreParams {
    pub fn new(j: usize, alpha: f64) -> Result<Self> {
        if !(alpha > -1.0) {
            return Err(Error::InvalidParameter {
                name: "alpha",
                value: alpha,
                reason: "Laguerre superscript must exceed -1",
            });
        }
        Ok(LaguerreParams { j, alpha })
    }

    pub fn j(&self) -> usize {
        self.j
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

/// `L_j^α(t)` by `(n+1) L_{n+1} = (2n + 1 + α - t) L_n - (n + α) L_{n-1}`.
pub fn laguerre_eval(params: LaguerreParams, t: f64) -> Result<f64> {
    if !(t >= 0.0) {
        return Err(Error::InvalidParameter {
            name: "t",
            value: t,
            reason: "Laguerre argument must be non-negative",
        });
    }
    Ok(recurrence(params.j, params.alpha, t))
}

pub(crate) fn recurrence(j: usize, alpha: f64, t: f64) -> f64 {
    let mut prev = 1.0;
    if j == 0 {
        return prev;
    }
    let mut cur = 1.0 + alpha - t;
    for n in 1..j {
        let nf = n as f64;
        let next = ((2.0 * nf + 1.0 + alpha - t) * cur - (nf + alpha) * prev) / (nf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}
