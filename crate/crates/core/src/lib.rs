//! Pseudo-spectral laboratory for the 2D viscous, non-resistive MHD system
//! written as a perturbation `(psi, v)` of the magnetic potential `x2`.
//!
//! Everything is generic over the scalar type (`f32` or `f64`, see [`Real`]);
//! the aliases below fix the common double-precision instantiation.

pub mod diagnostics;
pub mod error;
pub mod integrator;
pub mod oracle;
pub mod propagator;
pub mod scalar;
pub mod spectral;
pub mod state;

pub use error::{MhdError, Result};
pub use scalar::Real;

pub type GridSpec64 = spectral::GridSpec<f64>;
pub type SpectralField64 = spectral::SpectralField<f64>;
pub type PhysicalField64 = spectral::PhysicalField<f64>;
pub type State64 = state::State<f64>;
pub type MhdModel64 = state::MhdModel<f64>;
pub type Stepper64 = integrator::Stepper<f64>;

pub type GridSpec32 = spectral::GridSpec<f32>;
pub type SpectralField32 = spectral::SpectralField<f32>;
pub type State32 = state::State<f32>;
pub type MhdModel32 = state::MhdModel<f32>;
