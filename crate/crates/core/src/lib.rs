//! Numerical core: ₂F₁ boundary asymptotics, rank-one spherical functions,
//! finite spectral models of modular theory, the SL₂ kernel representation,
//! de Sitter crown geometry and 3-graded matrix Lie algebras.
//!
//! Everything except [`lie`] is generic over [`Real`] (`f32` or `f64`); the
//! aliases below fix the scalar to `f64`.

pub mod desitter;
pub mod error;
pub mod fit;
pub mod lie;
pub mod linalg;
pub mod modular;
pub mod quadrature;
pub mod scalar;
pub mod sl2;
pub mod special;
pub mod spherical;

pub use error::{Error, Result};
pub use scalar::Real;

/// Complex number in double precision.
pub type C64 = num_complex::Complex<f64>;

pub type HypParams64 = special::HypParams<f64>;
pub type LimitClass64 = special::LimitClass<f64>;
pub type SphericalParam64 = spherical::SphericalParam<f64>;
pub type AsymptoticForm64 = spherical::AsymptoticForm<f64>;
pub type SpectralModel64 = modular::DiscreteSpectralModel<f64>;
pub type SpectralVector64 = modular::SpectralVector<f64>;
pub type TailMeasure64 = modular::TailMeasure<f64>;
pub type Moebius64 = sl2::Moebius<f64>;
pub type KernelVector64 = sl2::KernelVector<f64>;
pub type LineFit64 = fit::LineFit<f64>;
