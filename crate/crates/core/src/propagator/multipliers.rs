use rustfft::num_complex::Complex;

use crate::error::{MhdError, Result};
use crate::scalar::Real;

/// Eigenvalue regime of the per-mode `(psi, v2)` block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    Oscillatory,
    Degenerate,
    Overdamped,
}

/// Roots of `lambda^2 + |xi|^2 lambda + xi1^2 = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeEigen<T> {
    pub lambda_plus: Complex<T>,
    pub lambda_minus: Complex<T>,
    pub regime: Regime,
    /// `|xi|^2 / 2`.
    pub a: T,
    /// `sqrt(|xi1^2 - a^2|)`.
    pub omega: T,
}

/// Signed `xi1^2 - a^2` in factored form, which keeps full relative accuracy
/// near the double root.
#[inline]
fn omega_sq_signed<T: Real>(xi1: T, a: T) -> T {
    let x = xi1.abs();
    (x - a) * (x + a)
}

/// Relative width of the band treated as an exact double root.
fn degenerate_tol<T: Real>() -> T {
    T::lit(64.0) * T::epsilon()
}

pub fn eigenvalues<T: Real>(xi1: T, xi2: T) -> ModeEigen<T> {
    let r2 = xi1 * xi1 + xi2 * xi2;
    let a = r2 * T::lit(0.5);
    let w2 = omega_sq_signed(xi1, a);
    let omega = w2.abs().sqrt();
    let zero = T::zero();
    let degenerate = w2.abs() <= degenerate_tol::<T>() * (xi1 * xi1).max(a * a);
    if degenerate {
        let l = Complex::new(-a, zero);
        ModeEigen { lambda_plus: l, lambda_minus: l, regime: Regime::Degenerate, a, omega: zero }
    } else if w2 > zero {
        ModeEigen {
            lambda_plus: Complex::new(-a, omega),
            lambda_minus: Complex::new(-a, -omega),
            regime: Regime::Oscillatory,
            a,
            omega,
        }
    } else {
        let big = a + omega;
        ModeEigen {
            lambda_plus: Complex::new(-(xi1 * xi1) / big, zero),
            lambda_minus: Complex::new(-big, zero),
            regime: Regime::Overdamped,
            a,
            omega,
        }
    }
}

/// Entries of the per-mode linear solution operator at time `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeMultipliers<T> {
    pub m11: T,
    pub m12: T,
    pub m21: T,
    pub m22: T,
    pub m31: T,
    pub m32: T,
}

impl<T: Real> ModeMultipliers<T> {
    pub fn identity() -> Self {
        let (o, z) = (T::one(), T::zero());
        Self { m11: o, m12: z, m21: z, m22: o, m31: z, m32: o }
    }

    fn from_block(xi1: T, xi2: T, m11: T, m12: T, m22: T) -> Self {
        Self { m11, m12, m21: xi1 * xi2 * m12, m22, m31: -(xi1 * xi1) * m12, m32: m22 }
    }

    /// `(psi, v1, v2) -> M (psi, v1, v2)`.
    #[inline]
    pub fn apply(&self, psi: Complex<T>, v1: Complex<T>, v2: Complex<T>) -> [Complex<T>; 3] {
        [
            psi.scale(self.m11) + v2.scale(self.m12),
            psi.scale(self.m21) + v1.scale(self.m22),
            psi.scale(self.m31) + v2.scale(self.m32),
        ]
    }

    /// The `(psi, v2)` block as `[[m11, m12], [m31, m32]]`.
    pub fn block(&self) -> [[T; 2]; 2] {
        [[self.m11, self.m12], [self.m31, self.m32]]
    }
}

/// `(sin(w t) / w, cos(w t))` (or the hyperbolic pair for `x < 0`) from its
/// Taylor series in the signed `x = w^2 t^2`.
fn small_angle_series<T: Real>(x: T, t: T) -> (T, T) {
    let c = |v: f64| T::lit(v);
    let s = t * (T::one() - x / c(6.0) * (T::one() - x / c(20.0) * (T::one() - x / c(42.0))));
    let co = T::one() - x / c(2.0) * (T::one() - x / c(12.0) * (T::one() - x / c(30.0)));
    (s, co)
}

/// Cut-off on `(omega t)^2` below which the series is used.
fn series_cutoff<T: Real>() -> T {
    T::lit(1e-6)
}

/// Exact multipliers of the linear flow for mode `xi` over time `t >= 0`.
pub fn multipliers<T: Real>(xi1: T, xi2: T, t: T) -> Result<ModeMultipliers<T>> {
    if t < T::zero() || t.is_nan() {
        return Err(MhdError::NegativeTime(t.to_f64_lossy()));
    }
    if t == T::zero() {
        return Ok(ModeMultipliers::identity());
    }
    let r2 = xi1 * xi1 + xi2 * xi2;
    if xi1 == T::zero() {
        // lambda_plus = 0 exactly: psi is not damped on this slice
        let (m12, m22) = if r2 == T::zero() {
            (-t, T::one())
        } else {
            ((-r2 * t).exp_m1() / r2, (-r2 * t).exp())
        };
        return Ok(ModeMultipliers::from_block(xi1, xi2, T::one(), m12, m22));
    }
    let a = r2 * T::lit(0.5);
    let w2 = omega_sq_signed(xi1, a);
    let x = w2 * t * t;
    let e = (-a * t).exp();
    let (m11, m12, m22) = if x.abs() < series_cutoff() {
        let (s, c) = small_angle_series(x, t);
        (e * (c + a * s), -e * s, e * (c - a * s))
    } else if w2 > T::zero() {
        let w = w2.sqrt();
        let (sn, cs) = (w * t).sin_cos();
        let s = sn / w;
        (e * (cs + a * s), -e * s, e * (cs - a * s))
    } else {
        let w = (-w2).sqrt();
        let lp = -(xi1 * xi1) / (a + w);
        let ep = (lp * t).exp();
        let two_w = w + w;
        let s = (-two_w * t).exp_m1() / two_w;
        (ep * (T::one() + lp * s), ep * s, ep * ((-two_w * t).exp() - lp * s))
    };
    Ok(ModeMultipliers::from_block(xi1, xi2, m11, m12, m22))
}
