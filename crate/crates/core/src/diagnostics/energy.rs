//! Residual of the `H^2` energy identity along a discrete trajectory.

use crate::error::Result;
use crate::scalar::Real;
use crate::spectral::{sobolev_inner, SpectralField};
use crate::state::{MhdModel, RhsBundle, State};

fn ip<T: Real>(a: &SpectralField<T>, b: &SpectralField<T>, s: u32) -> Result<T> {
    sobolev_inner(a, b, s, false)
}

/// `sum_i (d_i a | d_i b)_{H^s}`.
fn grad_ip<T: Real>(a: &SpectralField<T>, b: &SpectralField<T>, s: u32) -> Result<T> {
    Ok(ip(&a.d1(), &b.d1(), s)? + ip(&a.d2(), &b.d2(), s)?)
}

/// `1/2 (||v||^2_{H^2} + ||grad psi||^2_{H^2} + 1/4 ||Delta psi||^2_{H^1}) + 1/4 (v2 | Delta psi)_{H^1}`.
pub fn energy<T: Real>(s: &State<T>) -> Result<T> {
    let q = T::lit(0.25);
    let lap = s.psi.laplacian();
    let quad = ip(&s.v1, &s.v1, 2)? + ip(&s.v2, &s.v2, 2)? + grad_ip(&s.psi, &s.psi, 2)? + q * ip(&lap, &lap, 1)?;
    Ok(T::lit(0.5) * quad + q * ip(&s.v2, &lap, 1)?)
}

/// `||grad v||^2_{H^2} - 1/4 ||grad v2||^2_{H^1} + 1/4 ||grad d1 psi||^2_{H^1}`.
pub fn dissipation<T: Real>(s: &State<T>) -> Result<T> {
    let q = T::lit(0.25);
    let d1 = s.psi.d1();
    Ok(grad_ip(&s.v1, &s.v1, 2)? + grad_ip(&s.v2, &s.v2, 2)? - q * grad_ip(&s.v2, &s.v2, 1)?
        + q * grad_ip(&d1, &d1, 1)?)
}

/// The seven nonlinear terms on the right of the identity at state `s`.
pub fn energy_rhs_terms<T: Real>(model: &MhdModel<T>, s: &State<T>, rhs: &RhsBundle<T>) -> Result<[T; 7]> {
    let q = T::lit(0.25);
    let lap = s.psi.laplacian();
    let n = model.advect_scalar(s, &s.psi)?;
    let a1 = model.advect_scalar(s, &s.v1)?;
    let a2 = model.advect_scalar(s, &s.v2)?;
    let (sd1, sd2) = model.stress_divergence(s)?;
    Ok([
        -(ip(&a1, &s.v1, 2)? + ip(&a2, &s.v2, 2)?),
        ip(&n, &lap, 2)?,
        -(ip(&sd1, &s.v1, 2)? + ip(&sd2, &s.v2, 2)?),
        -q * ip(&a2, &lap, 1)?,
        q * ip(&rhs.f2_hat, &lap, 1)?,
        q * grad_ip(&s.v2, &n, 1)?,
        -q * ip(&n.laplacian(), &lap, 1)?,
    ])
}

/// Relative residual `|LHS - RHS| / max(1, |RHS|)` with the energy rate taken
/// as the centred difference over `s_prev, s_next` at spacing `dt`.
pub fn energy_identity_residual<T: Real>(
    model: &MhdModel<T>,
    s: &State<T>,
    rhs: &RhsBundle<T>,
    s_prev: &State<T>,
    s_next: &State<T>,
    dt: T,
) -> Result<f64> {
    let rate = (energy(s_next)? - energy(s_prev)?) / (dt + dt);
    residual(rate + dissipation(s)?, energy_rhs_terms(model, s, rhs)?)
}

/// Same residual with the exact instantaneous rate `dE/dt` from the
/// semi-discrete right-hand side; zero up to rounding.
pub fn energy_identity_residual_instant<T: Real>(model: &MhdModel<T>, s: &State<T>) -> Result<f64> {
    let rhs = model.rhs_full(s)?;
    let k = full_tendency(s, &rhs)?;
    residual(energy_rate(s, &k)? + dissipation(s)?, energy_rhs_terms(model, s, &rhs)?)
}

fn residual<T: Real>(lhs: T, terms: [T; 7]) -> Result<f64> {
    let rhs: T = terms.iter().copied().sum();
    let lhs = lhs.to_f64_lossy();
    let rhs = rhs.to_f64_lossy();
    Ok((lhs - rhs).abs() / rhs.abs().max(1.0))
}

/// `d/dt (psi, v)` of the full system: linear part plus forcing.
pub fn full_tendency<T: Real>(s: &State<T>, rhs: &RhsBundle<T>) -> Result<State<T>> {
    let psi = s.v2.neg().add(&rhs.f_hat)?;
    let v1 = s.v1.laplacian().add(&s.psi.d1().d2())?.add(&rhs.g1_hat)?;
    let v2 = s.v2.laplacian().sub(&s.psi.d1().d1())?.add(&rhs.g2_hat)?;
    State::new(psi, v1, v2, s.t)
}

/// Directional derivative of [`energy`] at `s` along the tendency `k`.
pub fn energy_rate<T: Real>(s: &State<T>, k: &State<T>) -> Result<T> {
    let q = T::lit(0.25);
    let lap = s.psi.laplacian();
    let dlap = k.psi.laplacian();
    Ok(ip(&s.v1, &k.v1, 2)? + ip(&s.v2, &k.v2, 2)? + grad_ip(&s.psi, &k.psi, 2)?
        + q * ip(&lap, &dlap, 1)?
        + q * (ip(&k.v2, &lap, 1)? + ip(&s.v2, &dlap, 1)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::integrator::{integrate, LinearOnly, RkOrder, Stepper, StepperConfig};
    use crate::spectral::{Complex, GridSpec};
    use rand::{Rng, SeedableRng};
    use std::f64::consts::PI;

    fn random_state(g: GridSpec<f64>, seed: u64, amp: f64) -> State<f64> {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut f = || {
            let mut f = SpectralField::from_fn(g, |_, _, k1, k2| {
                if k1.abs() <= 4 && k2.abs() <= 4 {
                    Complex::new(rng.random_range(-amp..amp), rng.random_range(-amp..amp))
                } else {
                    Complex::new(0.0, 0.0)
                }
            });
            f.symmetrize();
            f
        };
        let (p, a, b) = (f(), f(), f());
        State::new(p, a, b, 0.0).unwrap().sanitize(true).unwrap()
    }

    #[test]
    fn zero_state_has_zero_residual() {
        let g = GridSpec::square(16, 8.0 * PI).unwrap();
        let m = MhdModel::new(g);
        let z = State::zeros(g);
        let rhs = m.rhs_full(&z).unwrap();
        assert_eq!(energy_identity_residual(&m, &z, &rhs, &z, &z, 0.1).unwrap(), 0.0);
    }

    #[test]
    fn instantaneous_identity_holds_to_rounding() {
        let g = GridSpec::square(32, 2.0 * PI).unwrap();
        let m = MhdModel::new(g);
        for seed in 0..4 {
            let s = random_state(g, seed, 0.05);
            let rhs = m.rhs_full(&s).unwrap();
            let terms = energy_rhs_terms(&m, &s, &rhs).unwrap();
            let scale = terms.iter().map(|x| x.abs()).fold(0.0, f64::max);
            let k = full_tendency(&s, &rhs).unwrap();
            let lhs = energy_rate(&s, &k).unwrap() + dissipation(&s).unwrap();
            let sum: f64 = terms.iter().sum();
            assert!((lhs - sum).abs() <= 1e-9 * scale, "seed {seed}: {lhs} vs {sum}");
            assert!(energy_identity_residual_instant(&m, &s).unwrap() < 1e-9);
        }
    }

    fn linear_residual(dt: f64) -> f64 {
        let g = GridSpec::square(16, 8.0 * PI).unwrap();
        let m = MhdModel::new(g);
        let mut s0 = State::zeros(g);
        s0.psi.set_pair(2, 1, Complex::new(0.1, 0.0));
        let st = Stepper::new(g, StepperConfig::new(dt, RkOrder::Two).unwrap()).unwrap();
        let mut traj = vec![s0.clone()];
        integrate(&s0, &st, &LinearOnly, 1.0, 1, |s, _| {
            traj.push(s.clone());
            Ok(())
        })
        .unwrap();
        let k = traj.len() / 2;
        let rhs = m.rhs_full(&traj[k]).unwrap();
        // linear flow: the nonlinear terms are quadratic in the single mode and vanish
        let terms = energy_rhs_terms(&m, &traj[k], &rhs).unwrap();
        assert!(terms.iter().all(|x| x.abs() < 1e-14));
        energy_identity_residual(&m, &traj[k], &rhs, &traj[k - 1], &traj[k + 1], dt).unwrap()
    }

    #[test]
    fn linear_residual_is_second_order() {
        let (a, b) = (linear_residual(0.02), linear_residual(0.01));
        let r = a / b;
        assert!((3.5..4.5).contains(&r), "ratio {r} ({a:e}, {b:e})");
    }
}
