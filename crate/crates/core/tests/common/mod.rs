#![allow(dead_code)]

use aniso_mhd::spectral::{Complex, GridSpec, SpectralField};
use aniso_mhd::state::State;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Hermitian random field supported on `|k1|, |k2| <= kmax`, mean zero.
pub fn random_field(g: GridSpec<f64>, rng: &mut ChaCha8Rng, amp: f64, kmax: isize) -> SpectralField<f64> {
    let mut f = SpectralField::from_fn(g, |_, _, k1, k2| {
        if k1.abs() <= kmax && k2.abs() <= kmax && (k1, k2) != (0, 0) {
            Complex::new(rng.random_range(-amp..amp), rng.random_range(-amp..amp))
        } else {
            Complex::new(0.0, 0.0)
        }
    });
    f.symmetrize();
    f
}

/// Solenoidal, mean-zero random state.
pub fn random_state(g: GridSpec<f64>, seed: u64, amp: f64, kmax: isize) -> State<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = random_field(g, &mut rng, amp, kmax);
    let a = random_field(g, &mut rng, amp, kmax);
    let b = random_field(g, &mut rng, amp, kmax);
    State::new(p, a, b, 0.0).unwrap().sanitize(true).unwrap()
}
