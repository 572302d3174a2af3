//! Numerical verifiers for Gaussian uncertainty principles of the
//! Clifford-Fourier transform.
//!
//! Each verifier samples or receives a field, measures decay rates or
//! weighted integrals of the field and of its transform, and reports whether
//! the measurements are consistent with the predicted regime. Divergent
//! integrals are detected by growth over nested cubes, since no finite grid
//! can certify divergence.

mod decay;
mod hardy;
mod miyachi;
mod polygauss;

pub use decay::{fit_gaussian_decay, fit_gaussian_decay_with, DecayFit, DecayFitOptions};
pub use hardy::{
    fit_scalar_profile, hardy_verify, HardyVerdict, Regime, CRITICAL_REL_TOL, TRANSFORM_FIT_FLOOR,
};
pub use miyachi::{
    miyachi_functional, miyachi_verify, weighted_transform_check, CorollaryReport,
    MiyachiConclusion, MiyachiFunctional, MiyachiReport, SweepBehaviour, CRITICAL_AB_TOL,
    FUNCTIONAL_ZERO_TOL, HEAT_MULTIPLE_TOL,
};
pub use polygauss::{
    polynomial_gaussian_image, PolyGaussReport, PolyGaussSummary, TERM_REL_TOL, TRUST_FLOOR,
};
