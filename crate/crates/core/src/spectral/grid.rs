use crate::error::{MhdError, Result};
use crate::scalar::Real;

/// Coordinate axis of the periodic box.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X1,
    X2,
}

/// Uniform periodic grid on `[0, l1) x [0, l2)`.
///
/// Coefficients and samples are stored row-major with axis 1 as the slow
/// index: `idx = i1 * n2 + i2`. Mode indices follow the usual FFT layout, so
/// storage index `i` carries the signed wavenumber `i` for `i < n/2` and
/// `i - n` otherwise, giving `k in [-n/2, n/2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec<T> {
    pub n1: usize,
    pub n2: usize,
    pub l1: T,
    pub l2: T,
}

impl<T: Real> GridSpec<T> {
    pub fn new(n1: usize, n2: usize, l1: T, l2: T) -> Result<Self> {
        for n in [n1, n2] {
            if n < 8 || n % 2 != 0 {
                return Err(MhdError::InvalidGrid(format!(
                    "points per axis must be even and >= 8, got {n}"
                )));
            }
        }
        if !(l1 > T::zero() && l2 > T::zero() && l1.is_finite() && l2.is_finite()) {
            return Err(MhdError::InvalidGrid(format!(
                "domain lengths must be positive, got {l1} x {l2}"
            )));
        }
        Ok(Self { n1, n2, l1, l2 })
    }

    /// Square `n x n` grid of side `l`.
    pub fn square(n: usize, l: T) -> Result<Self> {
        Self::new(n, n, l, l)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n1 * self.n2
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub fn dxi1(&self) -> T {
        T::TAU() / self.l1
    }

    #[inline]
    pub fn dxi2(&self) -> T {
        T::TAU() / self.l2
    }

    #[inline]
    pub fn h1(&self) -> T {
        self.l1 / T::of_usize(self.n1)
    }

    #[inline]
    pub fn h2(&self) -> T {
        self.l2 / T::of_usize(self.n2)
    }

    #[inline]
    pub fn area(&self) -> T {
        self.l1 * self.l2
    }

    /// Quadrature weight of one grid cell.
    #[inline]
    pub fn cell_area(&self) -> T {
        self.area() / T::of_usize(self.len())
    }

    #[inline]
    pub fn index(&self, i1: usize, i2: usize) -> usize {
        i1 * self.n2 + i2
    }

    /// Signed wavenumber index `(k1, k2)` of storage index `idx`.
    #[inline]
    pub fn wavenumber(&self, idx: usize) -> (isize, isize) {
        let (i1, i2) = (idx / self.n2, idx % self.n2);
        (signed_mode(i1, self.n1), signed_mode(i2, self.n2))
    }

    /// Storage index of the signed wavenumber `(k1, k2)`, wrapped periodically.
    #[inline]
    pub fn index_of(&self, k1: isize, k2: isize) -> usize {
        let i1 = k1.rem_euclid(self.n1 as isize) as usize;
        let i2 = k2.rem_euclid(self.n2 as isize) as usize;
        self.index(i1, i2)
    }

    /// Storage index of the mode `-k` when `idx` holds `k`.
    #[inline]
    pub fn mirror(&self, idx: usize) -> usize {
        let (i1, i2) = (idx / self.n2, idx % self.n2);
        self.index((self.n1 - i1) % self.n1, (self.n2 - i2) % self.n2)
    }

    /// Physical frequency `(xi1, xi2)` of storage index `idx`.
    #[inline]
    pub fn xi(&self, idx: usize) -> (T, T) {
        let (k1, k2) = self.wavenumber(idx);
        (T::of_isize(k1) * self.dxi1(), T::of_isize(k2) * self.dxi2())
    }

    /// Frequency as seen by odd-order operators: the Nyquist component is
    /// replaced by zero so that `xi(-k) = -xi(k)` holds on every mode.
    #[inline]
    pub fn xi_odd(&self, idx: usize) -> (T, T) {
        let (x1, x2) = self.xi(idx);
        let (n1, n2) = self.is_nyquist(idx);
        (if n1 { T::zero() } else { x1 }, if n2 { T::zero() } else { x2 })
    }

    /// Frequencies of all modes in storage order.
    pub fn xi_table(&self) -> Vec<(T, T)> {
        (0..self.len()).map(|i| self.xi(i)).collect()
    }

    /// Physical coordinate of grid point `(i1, i2)`.
    #[inline]
    pub fn point(&self, i1: usize, i2: usize) -> (T, T) {
        (T::of_usize(i1) * self.h1(), T::of_usize(i2) * self.h2())
    }

    /// Whether `idx` lies on a Nyquist row or column (`k = -n/2`).
    #[inline]
    pub fn is_nyquist(&self, idx: usize) -> (bool, bool) {
        let (i1, i2) = (idx / self.n2, idx % self.n2);
        (i1 == self.n1 / 2, i2 == self.n2 / 2)
    }

    /// Modes kept by the 2/3 truncation: `3|k1| < n1` and `3|k2| < n2`.
    #[inline]
    pub fn in_dealias_band(&self, idx: usize) -> bool {
        let (k1, k2) = self.wavenumber(idx);
        3 * k1.unsigned_abs() < self.n1 && 3 * k2.unsigned_abs() < self.n2
    }

    /// Smallest nonzero `|xi|^2` on the grid.
    pub fn min_nonzero_xi_sq(&self) -> T {
        let a = self.dxi1() * self.dxi1();
        let b = self.dxi2() * self.dxi2();
        a.min(b)
    }

    pub(crate) fn check_same(&self, other: &Self) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(MhdError::GridMismatch)
        }
    }
}

#[inline]
fn signed_mode(i: usize, n: usize) -> isize {
    if i < n / 2 {
        i as isize
    } else {
        i as isize - n as isize
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_odd_and_small() {
        assert!(GridSpec::<f64>::square(7, 1.0).is_err());
        assert!(GridSpec::<f64>::square(6, 1.0).is_err());
        assert!(GridSpec::<f64>::square(8, 0.0).is_err());
        assert!(GridSpec::<f64>::new(8, 10, 1.0, 2.0).is_ok());
    }

    #[test]
    fn mode_layout_covers_half_open_range() {
        let g = GridSpec::<f64>::new(8, 10, 1.0, 1.0).unwrap();
        let mut k1s: Vec<_> = (0..g.n1).map(|i| g.wavenumber(g.index(i, 0)).0).collect();
        k1s.sort();
        assert_eq!(k1s, (-4..4).collect::<Vec<_>>());
        for idx in 0..g.len() {
            let (k1, k2) = g.wavenumber(idx);
            assert_eq!(g.index_of(k1, k2), idx);
            let m = g.mirror(idx);
            let (m1, m2) = g.wavenumber(m);
            assert_eq!(g.index_of(-k1, -k2), g.index_of(m1, m2));
        }
    }

    #[test]
    fn spacings() {
        let g = GridSpec::square(16, 8.0 * std::f64::consts::PI).unwrap();
        assert!((g.dxi1() - 0.25).abs() < 1e-15);
        assert!((g.min_nonzero_xi_sq() - 0.0625).abs() < 1e-15);
    }
}
