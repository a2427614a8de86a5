//! Periodic-grid Fourier representation of real scalar fields.

mod fft;
mod field;
mod grid;
mod ops;
mod region;

pub use fft::Fft2;
pub use field::{PhysicalField, SpectralField};
pub use grid::{Axis, GridSpec};
pub use ops::{
    divergence, homogeneous_weight, l1xi_norm_vec, max_rel_divergence, project_divfree, sobolev_inner,
    sobolev_inner_vec, sobolev_norm_sq, sobolev_weight,
};
pub use region::{in_set_a, region_mask, set_a_mask, ModeMask, RegionTag};

pub use rustfft::num_complex::Complex;
