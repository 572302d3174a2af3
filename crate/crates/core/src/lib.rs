//! Clifford-Fourier analysis in `Cl(0, m)`: multivector algebra, sampled
//! fields, the m = 2 Clifford-Fourier transform, the Clifford heat kernel,
//! monogenic polynomials and Hardy/Miyachi uncertainty verifiers.

pub mod algebra;
pub mod error;
pub mod fourier;
pub mod grid;
pub mod heat;
pub mod par;
pub mod poly;
pub mod uncertainty;

pub use algebra::{BladeIndex, ComplexMultivector, Multivector};
pub use error::{Error, Result};
pub use fourier::{KernelSign, TransformMethod};
pub use grid::{GridSpec, SampledField};
pub use poly::PolyField;
