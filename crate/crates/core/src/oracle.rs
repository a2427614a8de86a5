//! Brute-force references for tests and audits. None of these share kernels
//! with the modules they check, apart from the transforms.

use rustfft::num_complex::Complex;

use crate::error::{MhdError, Result};
use crate::scalar::Real;
use crate::spectral::{Axis, PhysicalField, SpectralField};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfig<T> {
    /// Finite-difference stride in grid cells.
    pub fd_stride: usize,
    pub rk_dt: T,
    pub tol: T,
}

impl<T: Real> Default for OracleConfig<T> {
    fn default() -> Self {
        Self { fd_stride: 1, rk_dt: T::lit(1e-5), tol: T::lit(1e-8) }
    }
}

/// Centred second-order finite difference of order `1..=4` with spacing
/// `stride` grid cells, periodic wrap.
pub fn fd_derivative<T: Real>(f: &PhysicalField<T>, axis: Axis, order: u32, stride: usize) -> Result<PhysicalField<T>> {
    let g = f.grid;
    let (n, h) = match axis {
        Axis::X1 => (g.n1, g.h1()),
        Axis::X2 => (g.n2, g.h2()),
    };
    let h = h * T::of_usize(stride);
    let (coefs, denom): (&[(isize, f64)], T) = match order {
        1 => (&[(1, 0.5), (-1, -0.5)], h),
        2 => (&[(1, 1.0), (0, -2.0), (-1, 1.0)], h * h),
        3 => (&[(2, 0.5), (1, -1.0), (-1, 1.0), (-2, -0.5)], h * h * h),
        4 => (&[(2, 1.0), (1, -4.0), (0, 6.0), (-1, -4.0), (-2, 1.0)], h * h * h * h),
        o => return Err(MhdError::InvalidArgument(format!("finite-difference order {o} not in 1..=4"))),
    };
    let mut out = PhysicalField::zeros(g);
    for i1 in 0..g.n1 {
        for i2 in 0..g.n2 {
            let mut acc = T::zero();
            for &(off, c) in coefs {
                let shift = |i: usize| (i as isize + off * stride as isize).rem_euclid(n as isize) as usize;
                let (j1, j2) = match axis {
                    Axis::X1 => (shift(i1), i2),
                    Axis::X2 => (i1, shift(i2)),
                };
                acc = acc + T::lit(c) * f.val[g.index(j1, j2)];
            }
            out.val[g.index(i1, i2)] = acc / denom;
        }
    }
    Ok(out)
}

/// Classical RK4 on the per-mode linear system
/// `psi' = -v2`, `v1' = -|xi|^2 v1 - xi1 xi2 psi`, `v2' = -|xi|^2 v2 + xi1^2 psi`.
///
/// The last step is shortened to land on `t_end`.
pub fn mode_ode_solve<T: Real>(
    xi: (T, T),
    y0: [Complex<T>; 3],
    t_end: T,
    rk_dt: T,
) -> Result<[Complex<T>; 3]> {
    if !(rk_dt > T::zero()) || t_end < T::zero() {
        return Err(MhdError::InvalidArgument("rk_dt must be positive and t_end non-negative".into()));
    }
    let (x1, x2) = xi;
    let r2 = x1 * x1 + x2 * x2;
    let f = |y: &[Complex<T>; 3]| -> [Complex<T>; 3] {
        [-y[2], y[1].scale(-r2) - y[0].scale(x1 * x2), y[2].scale(-r2) + y[0].scale(x1 * x1)]
    };
    let add = |y: &[Complex<T>; 3], k: &[Complex<T>; 3], h: T| [y[0] + k[0].scale(h), y[1] + k[1].scale(h), y[2] + k[2].scale(h)];
    let steps = (t_end / rk_dt).ceil().to_f64_lossy() as usize;
    let mut y = y0;
    let mut t = T::zero();
    for _ in 0..steps {
        let h = rk_dt.min(t_end - t);
        if h <= T::zero() {
            break;
        }
        let half = h * T::lit(0.5);
        let k1 = f(&y);
        let k2 = f(&add(&y, &k1, half));
        let k3 = f(&add(&y, &k2, half));
        let k4 = f(&add(&y, &k3, h));
        let sixth = h / T::lit(6.0);
        let two = T::lit(2.0);
        for i in 0..3 {
            y[i] = y[i] + (k1[i] + k2[i].scale(two) + k3[i].scale(two) + k4[i]).scale(sixth);
        }
        t = t + h;
    }
    Ok(y)
}

/// Direct convolution `(f g)^(k) = sum_p f(p) g(k - p)` over the signed mode
/// sets, truncated to the 2/3 band. Grids up to 8 points per axis only.
pub fn small_grid_convolution<T: Real>(f: &SpectralField<T>, g: &SpectralField<T>) -> Result<SpectralField<T>> {
    if f.grid != g.grid {
        return Err(MhdError::GridMismatch);
    }
    let grid = f.grid;
    let big = grid.n1.max(grid.n2);
    if big > 8 {
        return Err(MhdError::GridTooLarge(big));
    }
    let in_range = |k: isize, n: usize| k >= -(n as isize / 2) && k < n as isize / 2;
    let mut out = SpectralField::zeros(grid);
    for i in 0..grid.len() {
        if !grid.in_dealias_band(i) {
            continue;
        }
        let (k1, k2) = grid.wavenumber(i);
        let mut acc = Complex::new(T::zero(), T::zero());
        for j in 0..grid.len() {
            let (p1, p2) = grid.wavenumber(j);
            let (q1, q2) = (k1 - p1, k2 - p2);
            if in_range(q1, grid.n1) && in_range(q2, grid.n2) {
                acc = acc + f.coef[j] * g.coef[grid.index_of(q1, q2)];
            }
        }
        out.coef[i] = acc;
    }
    Ok(out)
}

/// `int prod_i f_i dx` by the grid rectangle rule.
pub fn quadrature_integral<T: Real>(fields: &[&PhysicalField<T>]) -> Result<T> {
    let Some(first) = fields.first() else {
        return Err(MhdError::InvalidArgument("no fields to integrate".into()));
    };
    let g = first.grid;
    if fields.iter().any(|f| f.grid != g) {
        return Err(MhdError::GridMismatch);
    }
    let sum: T = (0..g.len()).map(|k| fields.iter().fold(T::one(), |acc, f| acc * f.val[k])).sum();
    Ok(sum * g.cell_area())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::GridSpec;
    use std::f64::consts::PI;

    #[test]
    fn fd_of_constant_is_zero() {
        let g = GridSpec::square(16, 3.0).unwrap();
        let c = PhysicalField::constant(g, 2.5);
        for order in 1..=4 {
            assert_eq!(fd_derivative(&c, Axis::X1, order, 1).unwrap().max_abs(), 0.0);
        }
        assert!(fd_derivative(&c, Axis::X1, 5, 1).is_err());
    }

    #[test]
    fn fd_sine_converges_quadratically() {
        let err = |n: usize| {
            let g = GridSpec::square(n, 2.0 * PI).unwrap();
            let f = PhysicalField::from_fn(g, |x1, _| x1.sin());
            let d = fd_derivative(&f, Axis::X1, 1, 1).unwrap();
            let w = PhysicalField::from_fn(g, |x1, _| x1.cos());
            d.val.iter().zip(&w.val).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
        };
        let r = err(32) / err(64);
        assert!((r - 4.0).abs() < 0.1, "{r}");
    }

    #[test]
    fn neutral_slice_of_the_ode() {
        let y = mode_ode_solve((0.0, 1.3), [Complex::new(0.7, -0.2), Complex::new(0.0, 0.0), Complex::new(0.0, 0.0)], 3.0, 1e-3)
            .unwrap();
        assert!((y[0] - Complex::new(0.7, -0.2)).norm() < 1e-12);
    }

    #[test]
    fn ode_lyapunov_function_decreases() {
        // xi1^2 |psi|^2 + |v2|^2 is non-increasing along the flow
        for xi in [(1.0, 0.0), (0.4, 0.9), (2.0, 2.0), (0.1, 0.05)] {
            let mut y = [Complex::new(1.0, 0.0), Complex::new(0.0, 0.0), Complex::new(0.5, 0.0)];
            let lyap = |y: &[Complex<f64>; 3]| xi.0 * xi.0 * y[0].norm_sqr() + y[2].norm_sqr();
            let mut prev = lyap(&y);
            for _ in 0..50 {
                y = mode_ode_solve(xi, y, 0.1, 1e-3).unwrap();
                let cur = lyap(&y);
                assert!(cur <= prev * (1.0 + 1e-12));
                prev = cur;
            }
        }
    }

    #[test]
    fn ode_self_convergence_is_quartic() {
        let y0 = [Complex::new(1.0, 0.2), Complex::new(0.1, 0.0), Complex::new(-0.3, 0.4)];
        let xi = (0.8, 1.1);
        let exact = mode_ode_solve(xi, y0, 1.0, 1e-4).unwrap();
        let e = |h: f64| {
            let y = mode_ode_solve(xi, y0, 1.0, h).unwrap();
            (0..3).map(|i| (y[i] - exact[i]).norm()).fold(0.0, f64::max)
        };
        let r = e(0.1) / e(0.05);
        assert!((r.log2() - 4.0).abs() < 0.3, "{r}");
    }

    #[test]
    fn delta_convolutions() {
        let g = GridSpec::square(8, 2.0 * PI).unwrap();
        let mut dc = SpectralField::zeros(g);
        dc.coef[0] = Complex::new(1.0, 0.0);
        let mut f = SpectralField::zeros(g);
        f.set_pair(1, 0, Complex::new(0.5, 0.0));
        f.set_pair(3, 3, Complex::new(0.2, 0.1));
        assert_eq!(small_grid_convolution(&dc, &f).unwrap(), f.dealias());
        let mut a = SpectralField::zeros(g);
        a.coef[g.index_of(1, 0)] = Complex::new(2.0, 0.0);
        let mut b = SpectralField::zeros(g);
        b.coef[g.index_of(0, -1)] = Complex::new(0.0, 3.0);
        let c = small_grid_convolution(&a, &b).unwrap();
        assert_eq!(c.at(1, -1), Complex::new(0.0, 6.0));
        assert_eq!(c.coef.iter().filter(|z| z.norm() > 0.0).count(), 1);
        assert!(small_grid_convolution(&SpectralField::zeros(GridSpec::square(16, 1.0).unwrap()), &SpectralField::zeros(GridSpec::square(16, 1.0).unwrap())).is_err());
    }

    #[test]
    fn quadrature_examples() {
        let g = GridSpec::new(16, 8, 2.0 * PI, 4.0 * PI).unwrap();
        let one = PhysicalField::constant(g, 1.0);
        assert!((quadrature_integral(&[&one]).unwrap() - g.area()).abs() < 1e-12);
        let s = PhysicalField::from_fn(g, |x1, _| x1.sin());
        assert!((quadrature_integral(&[&s, &s]).unwrap() - g.area() / 2.0).abs() < 1e-12);
    }
}
