use std::fmt;
use std::sync::Arc;

use rustfft::num_complex::Complex;
use rustfft::{Fft, FftPlanner};

use super::field::{PhysicalField, SpectralField};
use super::grid::GridSpec;
use crate::error::Result;
use crate::scalar::Real;

/// Planned 2D complex FFTs for one grid. Immutable and cheap to share.
#[derive(Clone)]
pub struct Fft2<T: Real> {
    grid: GridSpec<T>,
    fwd1: Arc<dyn Fft<T>>,
    fwd2: Arc<dyn Fft<T>>,
    inv1: Arc<dyn Fft<T>>,
    inv2: Arc<dyn Fft<T>>,
}

impl<T: Real> fmt::Debug for Fft2<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Fft2").field("grid", &self.grid).finish()
    }
}

impl<T: Real> Fft2<T> {
    pub fn new(grid: GridSpec<T>) -> Self {
        let mut planner = FftPlanner::new();
        Self {
            grid,
            fwd1: planner.plan_fft_forward(grid.n1),
            fwd2: planner.plan_fft_forward(grid.n2),
            inv1: planner.plan_fft_inverse(grid.n1),
            inv2: planner.plan_fft_inverse(grid.n2),
        }
    }

    pub fn grid(&self) -> &GridSpec<T> {
        &self.grid
    }

    /// Physical samples to coefficients. The output is made exactly Hermitian.
    pub fn forward(&self, f: &PhysicalField<T>) -> Result<SpectralField<T>> {
        self.grid.check_same(&f.grid)?;
        let mut buf: Vec<Complex<T>> = f.val.iter().map(|&v| Complex::new(v, T::zero())).collect();
        self.transform(&mut buf, &*self.fwd1, &*self.fwd2);
        let scale = T::one() / T::of_usize(self.grid.len());
        for c in &mut buf {
            *c = c.scale(scale);
        }
        let mut out = SpectralField::from_coef(self.grid, buf);
        out.symmetrize();
        Ok(out)
    }

    /// Coefficients to physical samples (real part of the synthesis sum).
    pub fn inverse(&self, f: &SpectralField<T>) -> Result<PhysicalField<T>> {
        self.grid.check_same(&f.grid)?;
        let mut buf = f.coef.clone();
        self.transform(&mut buf, &*self.inv1, &*self.inv2);
        Ok(PhysicalField { grid: self.grid, val: buf.into_iter().map(|c| c.re).collect() })
    }

    fn transform(&self, buf: &mut [Complex<T>], along1: &dyn Fft<T>, along2: &dyn Fft<T>) {
        let (n1, n2) = (self.grid.n1, self.grid.n2);
        along2.process(buf);
        let mut cols = vec![Complex::new(T::zero(), T::zero()); n1 * n2];
        for i1 in 0..n1 {
            for i2 in 0..n2 {
                cols[i2 * n1 + i1] = buf[i1 * n2 + i2];
            }
        }
        along1.process(&mut cols);
        for i2 in 0..n2 {
            for i1 in 0..n1 {
                buf[i1 * n2 + i2] = cols[i2 * n1 + i1];
            }
        }
    }
}
