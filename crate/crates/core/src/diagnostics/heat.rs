use crate::error::{MhdError, Result};
use crate::scalar::Real;
use crate::state::State;

/// Initial-data size `A_0 = A_{1,0} + A_{2,0}` with its quadrature tail.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct A0Report {
    /// `||grad psi_0||_{H^2} + ||v_0||_{H^2}`.
    pub a10: f64,
    /// Heat-weighted `L^2_t L^1_xi` norm of `grad psi_0`.
    pub heat_grad_psi: f64,
    /// Heat-weighted `L^2_t L^1_xi` norm of `v_0`.
    pub heat_v: f64,
    /// Tail bounds added to the squared integrals beyond `t_cut`, `(grad psi, v)`.
    pub tail: (f64, f64),
}

impl A0Report {
    pub fn a20(&self) -> f64 {
        self.heat_grad_psi + self.heat_v
    }

    pub fn a0(&self) -> f64 {
        self.a10 + self.a20()
    }
}

/// `sqrt(int_0^inf g(t)^2 dt)` for `g(t) = sum_k c_k exp(-r_k t)`.
///
/// Trapezoid rule on `[0, t_cut]`; beyond it `g(t) <= g(t_cut) exp(-r_min (t - t_cut))`
/// bounds the remainder by `g(t_cut)^2 / (2 r_min)`.
fn heat_l2<T: Real>(terms: &[(T, T)], r_min: T, t_cut: T, quad_dt: T) -> (T, T) {
    if terms.is_empty() {
        return (T::zero(), T::zero());
    }
    let steps = (t_cut / quad_dt).ceil().to_f64_lossy().max(1.0) as usize;
    let h = t_cut / T::of_usize(steps);
    let decay: Vec<T> = terms.iter().map(|&(_, r)| (-r * h).exp()).collect();
    let mut cur: Vec<T> = terms.iter().map(|&(c, _)| c).collect();
    let g0: T = cur.iter().copied().sum();
    let mut acc = g0 * g0 * T::lit(0.5);
    let mut g = g0;
    for k in 1..=steps {
        for (c, d) in cur.iter_mut().zip(&decay) {
            *c = *c * *d;
        }
        g = cur.iter().copied().sum();
        acc = acc + if k == steps { g * g * T::lit(0.5) } else { g * g };
    }
    let tail = g * g / (r_min + r_min);
    ((acc * h + tail).sqrt(), tail)
}

/// `A_0` of initial data `s0`; the heat-weighted part by time quadrature.
pub fn a0<T: Real>(s0: &State<T>, t_cut: T, quad_dt: T) -> Result<A0Report> {
    if !(t_cut > T::zero() && quad_dt > T::zero()) {
        return Err(MhdError::InvalidArgument("t_cut and quad_dt must be positive".into()));
    }
    let g = *s0.grid();
    let zero = T::zero();
    if s0.v1.coef[0].norm_sqr() + s0.v2.coef[0].norm_sqr() > zero {
        return Err(MhdError::DivergentHeatNorm);
    }
    let measure = {
        let tau = T::TAU();
        g.dxi1() * g.dxi2() * g.area() / (tau * tau)
    };
    let (mut tp, mut tv) = (Vec::new(), Vec::new());
    let (mut h2p, mut h2v) = (zero, zero);
    for i in 0..g.len() {
        let (x1, x2) = g.xi(i);
        let r2 = x1 * x1 + x2 * x2;
        let w = crate::spectral::sobolev_weight(x1, x2, 2, false);
        let pp = s0.psi.coef[i].norm();
        let pv = (s0.v1.coef[i].norm_sqr() + s0.v2.coef[i].norm_sqr()).sqrt();
        h2p = h2p + w * r2 * pp * pp;
        h2v = h2v + w * pv * pv;
        if i == 0 {
            continue;
        }
        if pp > zero {
            tp.push((measure * r2.sqrt() * pp, r2));
        }
        if pv > zero {
            tv.push((measure * pv, r2));
        }
    }
    let r_min = g.min_nonzero_xi_sq();
    let (hp, tailp) = heat_l2(&tp, r_min, t_cut, quad_dt);
    let (hv, tailv) = heat_l2(&tv, r_min, t_cut, quad_dt);
    let area = g.area();
    Ok(A0Report {
        a10: ((h2p * area).sqrt() + (h2v * area).sqrt()).to_f64_lossy(),
        heat_grad_psi: hp.to_f64_lossy(),
        heat_v: hv.to_f64_lossy(),
        tail: (tailp.to_f64_lossy(), tailv.to_f64_lossy()),
    })
}
