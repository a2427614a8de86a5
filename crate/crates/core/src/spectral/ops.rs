use rustfft::num_complex::Complex;

use super::field::SpectralField;
use super::grid::Axis;
use super::region::ModeMask;
use crate::error::Result;
use crate::scalar::Real;

/// Multiply `c` by `i^p` exactly (component swaps and sign flips only).
#[inline]
pub(crate) fn times_i_pow<T: Real>(c: Complex<T>, p: u32) -> Complex<T> {
    match p % 4 {
        0 => c,
        1 => Complex::new(-c.im, c.re),
        2 => Complex::new(-c.re, -c.im),
        _ => Complex::new(c.im, -c.re),
    }
}

impl<T: Real> SpectralField<T> {
    /// `d^order / dx_axis^order`, i.e. multiplication by `(i xi_axis)^order`.
    ///
    /// For odd orders the Nyquist line of that axis is zeroed: its
    /// coefficients are self-conjugate and an odd derivative cannot keep
    /// them real.
    pub fn derivative(&self, axis: Axis, order: u32) -> Self {
        let g = self.grid;
        let coef = self
            .coef
            .iter()
            .enumerate()
            .map(|(i, &c)| {
                let (x1, x2) = g.xi(i);
                let (xi, nyq) = match axis {
                    Axis::X1 => (x1, g.is_nyquist(i).0),
                    Axis::X2 => (x2, g.is_nyquist(i).1),
                };
                if order % 2 == 1 && nyq {
                    return Complex::new(T::zero(), T::zero());
                }
                times_i_pow(c.scale(xi.powi(order as i32)), order)
            })
            .collect();
        Self { grid: g, coef }
    }

    pub fn d1(&self) -> Self {
        self.derivative(Axis::X1, 1)
    }

    pub fn d2(&self) -> Self {
        self.derivative(Axis::X2, 1)
    }

    /// `Delta f`.
    pub fn laplacian(&self) -> Self {
        self.map_symbol(|x1, x2| -(x1 * x1 + x2 * x2))
    }

    /// `(-Delta)^{-1} f`, with the zero mode mapped to zero.
    pub fn inv_neg_laplacian(&self) -> Self {
        self.map_symbol(|x1, x2| {
            let r2 = x1 * x1 + x2 * x2;
            if r2 > T::zero() {
                T::one() / r2
            } else {
                T::zero()
            }
        })
    }

    /// 2/3-rule truncation: zero every mode with `3|k1| >= n1` or `3|k2| >= n2`.
    pub fn dealias(&self) -> Self {
        let mut out = self.clone();
        out.dealias_in_place();
        out
    }

    pub fn dealias_in_place(&mut self) {
        let g = self.grid;
        for (i, c) in self.coef.iter_mut().enumerate() {
            if !g.in_dealias_band(i) {
                *c = Complex::new(T::zero(), T::zero());
            }
        }
    }

    /// Whether all coefficients outside the 2/3 band vanish.
    pub fn is_band_limited(&self) -> bool {
        self.coef
            .iter()
            .enumerate()
            .all(|(i, c)| self.grid.in_dealias_band(i) || (c.re == T::zero() && c.im == T::zero()))
    }

    /// Riemann-sum surrogate of `int |f^(xi)| dxi`, optionally restricted to a mask.
    ///
    /// With the coefficient normalization used here the measure factor
    /// `dxi1 dxi2 l1 l2 / (2 pi)^2` is one, and the value bounds `sup |f|`.
    pub fn l1xi_norm(&self, mask: Option<&ModeMask>) -> T {
        l1xi_measure(&self.grid) * masked_sum(self.coef.len(), mask, |i| self.coef[i].norm())
    }
}

pub(crate) fn l1xi_measure<T: Real>(g: &super::grid::GridSpec<T>) -> T {
    let tau = T::TAU();
    g.dxi1() * g.dxi2() * g.area() / (tau * tau)
}

pub(crate) fn masked_sum<T: Real>(n: usize, mask: Option<&ModeMask>, f: impl Fn(usize) -> T) -> T {
    match mask {
        None => (0..n).map(f).sum(),
        Some(m) => (0..n).filter(|&i| m.contains(i)).map(f).sum(),
    }
}

/// Discrete L1_xi norm of a vector field, using the Euclidean modulus per mode.
pub fn l1xi_norm_vec<T: Real>(a: &SpectralField<T>, b: &SpectralField<T>, mask: Option<&ModeMask>) -> T {
    l1xi_measure(&a.grid)
        * masked_sum(a.coef.len(), mask, |i| (a.coef[i].norm_sqr() + b.coef[i].norm_sqr()).sqrt())
}

/// Weight `sum_{|alpha| = k} xi^{2 alpha}` over distinct multi-indices.
#[inline]
pub fn homogeneous_weight<T: Real>(x1: T, x2: T, k: u32) -> T {
    let (a, b) = (x1 * x1, x2 * x2);
    (0..=k).map(|j| a.powi(j as i32) * b.powi((k - j) as i32)).sum()
}

/// Weight of `H^s` (`homogeneous = false`, orders `0..=s`) or `H^s-dot`.
#[inline]
pub fn sobolev_weight<T: Real>(x1: T, x2: T, s: u32, homogeneous: bool) -> T {
    if homogeneous {
        homogeneous_weight(x1, x2, s)
    } else {
        (0..=s).map(|k| homogeneous_weight(x1, x2, k)).sum()
    }
}

/// `(f | g)_{H^s}` or `(f | g)_{H^s-dot}` computed mode-wise.
pub fn sobolev_inner<T: Real>(f: &SpectralField<T>, g: &SpectralField<T>, s: u32, homogeneous: bool) -> Result<T> {
    f.grid.check_same(&g.grid)?;
    let grid = f.grid;
    let sum: T = f
        .coef
        .iter()
        .zip(&g.coef)
        .enumerate()
        .map(|(i, (a, b))| {
            let (x1, x2) = grid.xi(i);
            sobolev_weight(x1, x2, s, homogeneous) * (a.re * b.re + a.im * b.im)
        })
        .sum();
    Ok(sum * grid.area())
}

/// `||f||^2_{H^s}`.
pub fn sobolev_norm_sq<T: Real>(f: &SpectralField<T>, s: u32) -> T {
    sobolev_inner(f, f, s, false).expect("same grid")
}

/// `sum_i (a_i | b_i)_{H^s}` for vector fields given component-wise.
pub fn sobolev_inner_vec<T: Real>(a: &[&SpectralField<T>], b: &[&SpectralField<T>], s: u32) -> Result<T> {
    let mut acc = T::zero();
    for (x, y) in a.iter().zip(b) {
        acc = acc + sobolev_inner(x, y, s, false)?;
    }
    Ok(acc)
}

/// `div (a, b)` in spectral space.
pub fn divergence<T: Real>(a: &SpectralField<T>, b: &SpectralField<T>) -> Result<SpectralField<T>> {
    a.d1().add(&b.d2())
}

/// Tolerance below which a mode counts as already solenoidal.
fn solenoidal_tol<T: Real>() -> T {
    T::lit(64.0) * T::epsilon()
}

/// Leray projection `v - xi (xi . v) / |xi|^2`, with the zero mode set to zero.
///
/// Nyquist components of `xi` are treated as zero, consistent with the
/// first-derivative operator, so the divergence seen by `divergence` vanishes.
///
/// Modes whose divergence is already at rounding level relative to
/// `|xi| |v|` are left untouched, which makes the projection bitwise
/// idempotent.
pub fn project_divfree<T: Real>(
    v1: &SpectralField<T>,
    v2: &SpectralField<T>,
) -> Result<(SpectralField<T>, SpectralField<T>)> {
    v1.grid.check_same(&v2.grid)?;
    let g = v1.grid;
    let mut a = v1.clone();
    let mut b = v2.clone();
    let tol = solenoidal_tol::<T>();
    for i in 0..g.len() {
        let (x1, x2) = g.xi_odd(i);
        let r2 = x1 * x1 + x2 * x2;
        if i == 0 {
            a.coef[i] = Complex::new(T::zero(), T::zero());
            b.coef[i] = Complex::new(T::zero(), T::zero());
            continue;
        }
        if r2 == T::zero() {
            continue;
        }
        let (p, q) = (a.coef[i], b.coef[i]);
        let d = p.scale(x1) + q.scale(x2);
        let mag = (p.norm_sqr() + q.norm_sqr()).sqrt() * r2.sqrt();
        if d.norm() <= tol * mag {
            continue;
        }
        let c = d.unscale(r2);
        a.coef[i] = p - c.scale(x1);
        b.coef[i] = q - c.scale(x2);
    }
    Ok((a, b))
}

/// `max_xi |xi1 v1 + xi2 v2|` relative to `max_xi |xi| |v|`.
pub fn max_rel_divergence<T: Real>(v1: &SpectralField<T>, v2: &SpectralField<T>) -> T {
    let g = v1.grid;
    let mut dmax = T::zero();
    let mut scale = T::zero();
    for i in 0..g.len() {
        let (x1, x2) = g.xi_odd(i);
        let d = (v1.coef[i].scale(x1) + v2.coef[i].scale(x2)).norm();
        let m = (v1.coef[i].norm_sqr() + v2.coef[i].norm_sqr()).sqrt() * (x1 * x1 + x2 * x2).sqrt();
        dmax = dmax.max(d);
        scale = scale.max(m);
    }
    if scale > T::zero() {
        dmax / scale
    } else {
        dmax
    }
}
