//! Initial states for the three `init_kind`s.

use aniso_mhd::diagnostics::Diagnostics;
use aniso_mhd::spectral::{Complex, Fft2, GridSpec, PhysicalField, SpectralField};
use aniso_mhd::state::{MhdModel, State};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::{InitKind, RunConfig};
use crate::error::Result;

pub fn grid(cfg: &RunConfig) -> Result<GridSpec<f64>> {
    Ok(GridSpec::square(cfg.n, cfg.domain_length)?)
}

/// `exp(-|x - c|^2 / sigma^2)` summed over the nearest periodic images.
fn periodic_gaussian(g: GridSpec<f64>, c: (f64, f64), sigma: f64) -> PhysicalField<f64> {
    PhysicalField::from_fn(g, |x1, x2| {
        let mut s = 0.0;
        for m1 in -2..=2 {
            for m2 in -2..=2 {
                let d1 = x1 - c.0 + m1 as f64 * g.l1;
                let d2 = x2 - c.1 + m2 as f64 * g.l2;
                s += (-(d1 * d1 + d2 * d2) / (sigma * sigma)).exp();
            }
        }
        s
    })
}

fn gaussian(g: GridSpec<f64>, eps: f64) -> Result<State<f64>> {
    let fft = Fft2::new(g);
    let sigma = g.l1 / 16.0;
    let centre = (g.l1 / 2.0, g.l2 / 2.0);
    let psi = fft.forward(&periodic_gaussian(g, centre, sigma))?.scaled(eps);
    let chi = fft.forward(&periodic_gaussian(g, (centre.0 + g.l1 / 8.0, centre.1 - g.l2 / 8.0), sigma))?;
    let v1 = chi.d2().scaled(eps);
    let v2 = chi.d1().scaled(-eps);
    Ok(State::new(psi, v1, v2, 0.0)?)
}

/// Hermitian coefficients drawn uniformly in `|k| <= n/8`, then scaled so
/// that `||grad psi||_{H^2} + ||v||_{H^2} = eps`.
fn random_bandlimited(g: GridSpec<f64>, eps: f64, seed: u64) -> Result<State<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let kmax = (g.n1 / 8) as isize;
    let mut field = || {
        let mut f = SpectralField::from_fn(g, |_, _, k1, k2| {
            let draw = Complex::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            if k1 * k1 + k2 * k2 <= kmax * kmax && (k1, k2) != (0, 0) {
                draw
            } else {
                Complex::new(0.0, 0.0)
            }
        });
        f.symmetrize();
        f
    };
    let (psi, v1, v2) = (field(), field(), field());
    let s = State::new(psi, v1, v2, 0.0)?.sanitize(true)?;
    let snap = Diagnostics::new(MhdModel::new(g)).snapshot(&s)?;
    let a10 = snap.h2_grad_psi + snap.h2_v;
    Ok(if a10 > 0.0 { s.scaled(eps / a10) } else { s })
}

/// `psi = eps sin(xi . x)` at the integer wavenumber `(k1, k2)`, `v = 0`.
fn single_mode(g: GridSpec<f64>, eps: f64, k: (i64, i64)) -> State<f64> {
    let mut s = State::zeros(g);
    if k != (0, 0) {
        s.psi.set_pair(k.0 as isize, k.1 as isize, Complex::new(0.0, -eps / 2.0));
    }
    s
}

/// Dealiased, solenoidal, mean-zero-velocity initial state at `t = 0`.
pub fn make_initial_data(cfg: &RunConfig) -> Result<State<f64>> {
    let g = grid(cfg)?;
    if cfg.epsilon == 0.0 {
        return Ok(State::zeros(g));
    }
    let s = match cfg.init_kind {
        InitKind::Gaussian => gaussian(g, cfg.epsilon)?,
        InitKind::RandomBandlimited => random_bandlimited(g, cfg.epsilon, cfg.seed)?,
        InitKind::SingleMode => single_mode(g, cfg.epsilon, (cfg.mode_k1, cfg.mode_k2)),
    };
    let mut s = s.sanitize(true)?;
    s.v1.coef[0] = Complex::new(0.0, 0.0);
    s.v2.coef[0] = Complex::new(0.0, 0.0);
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(kind: InitKind) -> RunConfig {
        RunConfig { n: 32, init_kind: kind, epsilon: 1e-2, seed: 7, ..RunConfig::default() }
    }

    #[test]
    fn zero_amplitude_gives_zero_state() {
        let c = RunConfig { epsilon: 0.0, ..cfg(InitKind::Gaussian) };
        let s = make_initial_data(&c).unwrap();
        assert_eq!(s, State::zeros(grid(&c).unwrap()));
    }

    #[test]
    fn all_kinds_are_admissible() {
        for kind in [InitKind::Gaussian, InitKind::RandomBandlimited, InitKind::SingleMode] {
            let s = make_initial_data(&cfg(kind)).unwrap();
            assert!(s.divergence_defect() <= 1e-12, "{kind:?}");
            assert_eq!(s.velocity_mean(), (Complex::new(0.0, 0.0), Complex::new(0.0, 0.0)));
            assert!(s.psi.is_band_limited() && s.v1.is_band_limited());
            assert!(s.hermitian_defect() <= 1e-15);
            assert!(s.max_abs() > 0.0);
        }
    }

    #[test]
    fn random_data_is_reproducible_and_scaled() {
        let c = cfg(InitKind::RandomBandlimited);
        let a = make_initial_data(&c).unwrap();
        assert_eq!(a, make_initial_data(&c).unwrap());
        let b = make_initial_data(&RunConfig { seed: 8, ..c.clone() }).unwrap();
        assert_ne!(a, b);
        let snap = Diagnostics::new(MhdModel::new(grid(&c).unwrap())).snapshot(&a).unwrap();
        assert!((snap.h2_grad_psi + snap.h2_v - 1e-2).abs() < 1e-14);
    }
}
