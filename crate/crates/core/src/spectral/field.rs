use rustfft::num_complex::Complex;

use super::grid::GridSpec;
use crate::error::Result;
use crate::scalar::Real;

/// Fourier coefficients of a scalar field on a periodic grid.
///
/// Normalization: `coef(xi) = (1 / (n1 n2)) sum_x val(x) exp(-i x.xi)`, so the
/// inverse transform is the plain sum and the zero mode is the mean.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralField<T> {
    pub grid: GridSpec<T>,
    pub coef: Vec<Complex<T>>,
}

/// Real samples of a scalar field on a periodic grid.
#[derive(Debug, Clone, PartialEq)]
pub struct PhysicalField<T> {
    pub grid: GridSpec<T>,
    pub val: Vec<T>,
}

impl<T: Real> SpectralField<T> {
    pub fn zeros(grid: GridSpec<T>) -> Self {
        Self { grid, coef: vec![Complex::new(T::zero(), T::zero()); grid.len()] }
    }

    pub fn from_coef(grid: GridSpec<T>, coef: Vec<Complex<T>>) -> Self {
        assert_eq!(coef.len(), grid.len(), "coefficient count must match the grid");
        Self { grid, coef }
    }

    /// Field whose coefficients are `f(xi1, xi2, k1, k2)`.
    pub fn from_fn(grid: GridSpec<T>, mut f: impl FnMut(T, T, isize, isize) -> Complex<T>) -> Self {
        let coef = (0..grid.len())
            .map(|i| {
                let (x1, x2) = grid.xi(i);
                let (k1, k2) = grid.wavenumber(i);
                f(x1, x2, k1, k2)
            })
            .collect();
        Self { grid, coef }
    }

    /// Set the Hermitian pair `k, -k` so the field is `re(c) cos + ...` of a real
    /// function with `coef(k) = c`.
    pub fn set_pair(&mut self, k1: isize, k2: isize, c: Complex<T>) {
        let i = self.grid.index_of(k1, k2);
        let j = self.grid.index_of(-k1, -k2);
        self.coef[i] = c;
        self.coef[j] = c.conj();
    }

    pub fn at(&self, k1: isize, k2: isize) -> Complex<T> {
        self.coef[self.grid.index_of(k1, k2)]
    }

    pub fn mean(&self) -> Complex<T> {
        self.coef[0]
    }

    pub fn is_finite(&self) -> bool {
        self.coef.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    /// Largest `|coef(-xi) - conj(coef(xi))|` over all modes.
    pub fn hermitian_defect(&self) -> T {
        (0..self.coef.len())
            .map(|i| (self.coef[self.grid.mirror(i)] - self.coef[i].conj()).norm())
            .fold(T::zero(), T::max)
    }

    /// Replace the field by its Hermitian part, `(c(xi) + conj c(-xi)) / 2`.
    pub fn symmetrize(&mut self) {
        let half = T::lit(0.5);
        let src = self.coef.clone();
        for (i, c) in self.coef.iter_mut().enumerate() {
            *c = (src[i] + src[self.grid.mirror(i)].conj()).scale(half);
        }
    }

    /// `sqrt(sum |coef|^2)`: the L2 norm divided by `sqrt(l1 l2)`.
    pub fn coef_norm(&self) -> T {
        self.coef.iter().map(|c| c.norm_sqr()).sum::<T>().sqrt()
    }

    pub fn max_abs(&self) -> T {
        self.coef.iter().map(|c| c.norm()).fold(T::zero(), T::max)
    }

    /// L2 norm of the represented function (Parseval).
    pub fn l2_norm(&self) -> T {
        self.coef_norm() * self.grid.area().sqrt()
    }

    pub fn scaled(&self, a: T) -> Self {
        Self { grid: self.grid, coef: self.coef.iter().map(|c| c.scale(a)).collect() }
    }

    /// `self + a * other`.
    pub fn axpy(&self, a: T, other: &Self) -> Result<Self> {
        self.grid.check_same(&other.grid)?;
        let coef = self.coef.iter().zip(&other.coef).map(|(x, y)| *x + y.scale(a)).collect();
        Ok(Self { grid: self.grid, coef })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.axpy(T::one(), other)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.axpy(-T::one(), other)
    }

    pub fn neg(&self) -> Self {
        self.scaled(-T::one())
    }

    /// Multiply mode-wise by a real symbol `m(xi1, xi2)`.
    pub fn map_symbol(&self, mut m: impl FnMut(T, T) -> T) -> Self {
        let coef = self
            .coef
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let (x1, x2) = self.grid.xi(i);
                c.scale(m(x1, x2))
            })
            .collect();
        Self { grid: self.grid, coef }
    }

    /// Largest coefficient difference relative to `max(|self|, |other|)`.
    pub fn rel_diff(&self, other: &Self) -> T {
        let scale = self.max_abs().max(other.max_abs());
        let d = self
            .coef
            .iter()
            .zip(&other.coef)
            .map(|(a, b)| (*a - *b).norm())
            .fold(T::zero(), T::max);
        if scale > T::zero() {
            d / scale
        } else {
            d
        }
    }
}

impl<T: Real> PhysicalField<T> {
    pub fn zeros(grid: GridSpec<T>) -> Self {
        Self { grid, val: vec![T::zero(); grid.len()] }
    }

    pub fn constant(grid: GridSpec<T>, c: T) -> Self {
        Self { grid, val: vec![c; grid.len()] }
    }

    /// Samples `f(x1, x2)` at the grid points.
    pub fn from_fn(grid: GridSpec<T>, mut f: impl FnMut(T, T) -> T) -> Self {
        let mut val = Vec::with_capacity(grid.len());
        for i1 in 0..grid.n1 {
            for i2 in 0..grid.n2 {
                let (x1, x2) = grid.point(i1, i2);
                val.push(f(x1, x2));
            }
        }
        Self { grid, val }
    }

    pub fn is_finite(&self) -> bool {
        self.val.iter().all(|v| v.is_finite())
    }

    pub fn max_abs(&self) -> T {
        self.val.iter().map(|v| v.abs()).fold(T::zero(), T::max)
    }

    /// Pointwise product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.grid.check_same(&other.grid)?;
        let val = self.val.iter().zip(&other.val).map(|(a, b)| *a * *b).collect();
        Ok(Self { grid: self.grid, val })
    }

    /// `sum val^2 * cell area`.
    pub fn l2_norm_sq(&self) -> T {
        self.val.iter().map(|v| *v * *v).sum::<T>() * self.grid.cell_area()
    }
}
