//! The evolving unknown and the nonlinear right-hand sides.

use std::sync::Arc;

use crate::error::Result;
use crate::scalar::Real;
use crate::spectral::{
    max_rel_divergence, project_divfree, Complex, Fft2, GridSpec, PhysicalField, SpectralField,
};

/// Perturbation `psi` of the magnetic potential and velocity `v` at time `t`.
///
/// Tendencies (time derivatives) reuse this type with `t` set to the
/// evaluation time.
#[derive(Debug, Clone, PartialEq)]
pub struct State<T> {
    pub psi: SpectralField<T>,
    pub v1: SpectralField<T>,
    pub v2: SpectralField<T>,
    pub t: T,
}

impl<T: Real> State<T> {
    pub fn zeros(grid: GridSpec<T>) -> Self {
        Self {
            psi: SpectralField::zeros(grid),
            v1: SpectralField::zeros(grid),
            v2: SpectralField::zeros(grid),
            t: T::zero(),
        }
    }

    pub fn new(psi: SpectralField<T>, v1: SpectralField<T>, v2: SpectralField<T>, t: T) -> Result<Self> {
        psi.grid.check_same(&v1.grid)?;
        psi.grid.check_same(&v2.grid)?;
        Ok(Self { psi, v1, v2, t })
    }

    pub fn grid(&self) -> &GridSpec<T> {
        &self.psi.grid
    }

    pub fn fields(&self) -> [&SpectralField<T>; 3] {
        [&self.psi, &self.v1, &self.v2]
    }

    pub fn is_finite(&self) -> bool {
        self.fields().iter().all(|f| f.is_finite())
    }

    /// Largest coefficient magnitude over the three fields.
    pub fn max_abs(&self) -> T {
        self.fields().iter().map(|f| f.max_abs()).fold(T::zero(), T::max)
    }

    /// `self + a * other`, keeping `self.t`.
    pub fn axpy(&self, a: T, other: &Self) -> Result<Self> {
        Ok(Self {
            psi: self.psi.axpy(a, &other.psi)?,
            v1: self.v1.axpy(a, &other.v1)?,
            v2: self.v2.axpy(a, &other.v2)?,
            t: self.t,
        })
    }

    pub fn scaled(&self, a: T) -> Self {
        Self { psi: self.psi.scaled(a), v1: self.v1.scaled(a), v2: self.v2.scaled(a), t: self.t }
    }

    pub fn with_time(mut self, t: T) -> Self {
        self.t = t;
        self
    }

    /// Impose the state invariants: 2/3 truncation, solenoidal velocity with
    /// zero mean.
    pub fn sanitize(&self, dealias: bool) -> Result<Self> {
        let (mut psi, mut v1, mut v2) = (self.psi.clone(), self.v1.clone(), self.v2.clone());
        if dealias {
            psi.dealias_in_place();
            v1.dealias_in_place();
            v2.dealias_in_place();
        }
        let (v1, v2) = project_divfree(&v1, &v2)?;
        Ok(Self { psi, v1, v2, t: self.t })
    }

    /// `max |xi . v^| / max |xi| |v^|`.
    pub fn divergence_defect(&self) -> T {
        max_rel_divergence(&self.v1, &self.v2)
    }

    pub fn hermitian_defect(&self) -> T {
        self.fields().iter().map(|f| f.hermitian_defect()).fold(T::zero(), T::max)
    }

    pub fn velocity_mean(&self) -> (Complex<T>, Complex<T>) {
        (self.v1.mean(), self.v2.mean())
    }
}

/// Nonlinear forcings of the pressure-eliminated system.
#[derive(Debug, Clone, PartialEq)]
pub struct RhsBundle<T> {
    /// `F = -v . grad psi`.
    pub f_hat: SpectralField<T>,
    pub g1_hat: SpectralField<T>,
    pub g2_hat: SpectralField<T>,
    /// Second component of the pressure-eliminated forcing, `f2 = G2 + v . grad v2`.
    pub f2_hat: SpectralField<T>,
}

impl<T: Real> RhsBundle<T> {
    /// The forcing as a tendency `(F, G1, G2)`.
    pub fn tendency(&self, t: T) -> State<T> {
        State { psi: self.f_hat.clone(), v1: self.g1_hat.clone(), v2: self.g2_hat.clone(), t }
    }
}

/// Physical-space sample set reused by the right-hand sides.
struct Samples<T> {
    d1psi: PhysicalField<T>,
    d2psi: PhysicalField<T>,
    v1: PhysicalField<T>,
    v2: PhysicalField<T>,
    // grad_v[i][j] = d_j v_i
    grad_v: [[PhysicalField<T>; 2]; 2],
}

/// `psi`-quadratic stresses `B_ij = d_i psi d_j psi`.
struct Stress<T> {
    b11: SpectralField<T>,
    b12: SpectralField<T>,
    b22: SpectralField<T>,
}

/// Evaluator of products and nonlinear terms on one grid.
#[derive(Debug, Clone)]
pub struct MhdModel<T: Real> {
    fft: Arc<Fft2<T>>,
}

impl<T: Real> MhdModel<T> {
    pub fn new(grid: GridSpec<T>) -> Self {
        Self { fft: Arc::new(Fft2::new(grid)) }
    }

    pub fn grid(&self) -> &GridSpec<T> {
        self.fft.grid()
    }

    pub fn fft(&self) -> &Fft2<T> {
        &self.fft
    }

    pub fn to_physical(&self, f: &SpectralField<T>) -> Result<PhysicalField<T>> {
        self.fft.inverse(f)
    }

    /// 2/3-truncated transform of a physical-space product.
    pub fn transform_product(&self, p: &PhysicalField<T>) -> Result<SpectralField<T>> {
        let mut out = self.fft.forward(p)?;
        out.dealias_in_place();
        Ok(out)
    }

    /// Dealiased pseudo-spectral product `f g`.
    pub fn product(&self, f: &SpectralField<T>, g: &SpectralField<T>) -> Result<SpectralField<T>> {
        let p = self.to_physical(f)?.mul(&self.to_physical(g)?)?;
        self.transform_product(&p)
    }

    /// Dot product `a . b` of physical-space pairs, transformed and truncated.
    fn dot(&self, a: [&PhysicalField<T>; 2], b: [&PhysicalField<T>; 2]) -> Result<SpectralField<T>> {
        let val = (0..a[0].val.len()).map(|k| a[0].val[k] * b[0].val[k] + a[1].val[k] * b[1].val[k]).collect();
        self.transform_product(&PhysicalField { grid: a[0].grid, val })
    }

    fn samples(&self, s: &State<T>) -> Result<Samples<T>> {
        let p = |f: &SpectralField<T>| self.to_physical(f);
        Ok(Samples {
            d1psi: p(&s.psi.d1())?,
            d2psi: p(&s.psi.d2())?,
            v1: p(&s.v1)?,
            v2: p(&s.v2)?,
            grad_v: [[p(&s.v1.d1())?, p(&s.v1.d2())?], [p(&s.v2.d1())?, p(&s.v2.d2())?]],
        })
    }

    fn stress(&self, sm: &Samples<T>) -> Result<Stress<T>> {
        Ok(Stress {
            b11: self.transform_product(&sm.d1psi.mul(&sm.d1psi)?)?,
            b12: self.transform_product(&sm.d1psi.mul(&sm.d2psi)?)?,
            b22: self.transform_product(&sm.d2psi.mul(&sm.d2psi)?)?,
        })
    }

    /// `Q = sum_ij d_i v_j d_j v_i + d_i d_j (d_i psi d_j psi)`.
    fn q_source(&self, sm: &Samples<T>, b: &Stress<T>) -> Result<SpectralField<T>> {
        let g = &sm.grad_v;
        let val = (0..sm.v1.val.len())
            .map(|k| {
                let (a, bb, c, d) = (g[0][0].val[k], g[0][1].val[k], g[1][0].val[k], g[1][1].val[k]);
                a * a + (bb * c + bb * c) + d * d
            })
            .collect();
        let sv = self.transform_product(&PhysicalField { grid: sm.v1.grid, val })?;
        let two = T::lit(2.0);
        let bpart = b.b11.d1().d1().add(&b.b12.d1().d2().scaled(two))?.add(&b.b22.d2().d2())?;
        sv.add(&bpart)
    }

    /// `sum_j d_j (d_i psi d_j psi)` for `i = 1, 2`.
    fn stress_div(b: &Stress<T>) -> Result<(SpectralField<T>, SpectralField<T>)> {
        Ok((b.b11.d1().add(&b.b12.d2())?, b.b12.d1().add(&b.b22.d2())?))
    }

    fn advection(&self, sm: &Samples<T>) -> Result<(SpectralField<T>, SpectralField<T>)> {
        let v = [&sm.v1, &sm.v2];
        let a1 = self.dot(v, [&sm.grad_v[0][0], &sm.grad_v[0][1]])?;
        let a2 = self.dot(v, [&sm.grad_v[1][0], &sm.grad_v[1][1]])?;
        Ok((a1, a2))
    }

    /// Magnetic field `b = (1 + d2 psi, -d1 psi)` in physical space.
    pub fn magnetic_from_potential(&self, s: &State<T>) -> Result<(PhysicalField<T>, PhysicalField<T>)> {
        let mut b1 = self.to_physical(&s.psi.d2())?;
        b1.val.iter_mut().for_each(|x| *x = *x + T::one());
        let mut b2 = self.to_physical(&s.psi.d1())?;
        b2.val.iter_mut().for_each(|x| *x = -*x);
        Ok((b1, b2))
    }

    /// `p = -2 d2 psi + (-Delta)^{-1} Q`, zero mean.
    pub fn pressure_solve(&self, s: &State<T>) -> Result<SpectralField<T>> {
        let sm = self.samples(s)?;
        let b = self.stress(&sm)?;
        let q = self.q_source(&sm, &b)?;
        s.psi.d2().scaled(T::lit(-2.0)).add(&q.inv_neg_laplacian())
    }

    /// `F = -v . grad psi`.
    pub fn nonlinear_f(&self, s: &State<T>) -> Result<SpectralField<T>> {
        let sm = self.samples(s)?;
        Ok(self.dot([&sm.v1, &sm.v2], [&sm.d1psi, &sm.d2psi])?.neg())
    }

    /// `G = -v . grad v - grad (-Delta)^{-1} Q - sum_j d_j (grad psi d_j psi)`.
    pub fn nonlinear_g(&self, s: &State<T>) -> Result<(SpectralField<T>, SpectralField<T>)> {
        let b = self.rhs_full(s)?;
        Ok((b.g1_hat, b.g2_hat))
    }

    pub fn rhs_full(&self, s: &State<T>) -> Result<RhsBundle<T>> {
        let sm = self.samples(s)?;
        let f_hat = self.dot([&sm.v1, &sm.v2], [&sm.d1psi, &sm.d2psi])?.neg();
        let b = self.stress(&sm)?;
        let p = self.q_source(&sm, &b)?.inv_neg_laplacian();
        let (sd1, sd2) = Self::stress_div(&b)?;
        let (a1, a2) = self.advection(&sm)?;
        let g1_hat = a1.add(&p.d1())?.add(&sd1)?.neg();
        let g2_hat = a2.add(&p.d2())?.add(&sd2)?.neg();
        let f2_hat = self.f2_direct(&sm, &b)?;
        Ok(RhsBundle { f_hat, g1_hat, g2_hat, f2_hat })
    }

    /// `f2 = -d2 (-Delta)^{-1} Q - sum_j d_j (d2 psi d_j psi)`, from its own formula.
    fn f2_direct(&self, sm: &Samples<T>, b: &Stress<T>) -> Result<SpectralField<T>> {
        let q = self.q_source(sm, b)?;
        let grad_part = q.d2().inv_neg_laplacian();
        let stress_part = b.b12.d1().add(&b.b22.d2())?;
        Ok(grad_part.add(&stress_part)?.neg())
    }

    /// `v . grad w` for a scalar `w`, dealiased.
    pub fn advect_scalar(&self, s: &State<T>, w: &SpectralField<T>) -> Result<SpectralField<T>> {
        let v1 = self.to_physical(&s.v1)?;
        let v2 = self.to_physical(&s.v2)?;
        let w1 = self.to_physical(&w.d1())?;
        let w2 = self.to_physical(&w.d2())?;
        self.dot([&v1, &v2], [&w1, &w2])
    }

    /// `div (grad psi (x) grad psi)`, componentwise.
    pub fn stress_divergence(&self, s: &State<T>) -> Result<(SpectralField<T>, SpectralField<T>)> {
        let sm = self.samples(s)?;
        Self::stress_div(&self.stress(&sm)?)
    }
}
