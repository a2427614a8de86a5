use crate::error::Result;
use crate::scalar::Real;
use crate::spectral::{homogeneous_weight, l1xi_norm_vec, region_mask, ModeMask, RegionTag};
use crate::state::{MhdModel, State};

/// Instantaneous norms of one state. Reported in `f64` whatever the solver scalar.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct NormSnapshot {
    pub t: f64,
    /// `||v||_{H^2}`.
    pub h2_v: f64,
    /// `||grad psi||_{H^2}`.
    pub h2_grad_psi: f64,
    /// `||grad v||_{H^2}`.
    pub h2_grad_v: f64,
    /// `||d1 grad psi||_{H^1}`.
    pub h1_d1_grad_psi: f64,
    /// Grid maximum of `|grad psi|`, a lower bound of the continuum sup.
    pub linf_grad_psi: f64,
    pub l1xi_v: f64,
    pub l1xi_d1psi: f64,
    /// `(v, d1 psi)` pairs in the order `Hi, LoSmall, LoLarge`.
    pub region_l1xi: [(f64, f64); 3],
    /// `int d2 v2 (d2^3 psi)^2 dx`.
    pub trilinear: f64,
    /// `||grad psi||_{H^1}`, needed by the interpolation ratio.
    pub h1_grad_psi: f64,
}

/// Evaluator of the instantaneous diagnostics on one grid.
#[derive(Debug, Clone)]
pub struct Diagnostics<T: Real> {
    model: MhdModel<T>,
    masks: [ModeMask; 3],
}

impl<T: Real> Diagnostics<T> {
    pub fn new(model: MhdModel<T>) -> Self {
        let g = *model.grid();
        let masks = RegionTag::ALL.map(|tag| region_mask(&g, tag));
        Self { model, masks }
    }

    pub fn model(&self) -> &MhdModel<T> {
        &self.model
    }

    pub fn mask(&self, tag: RegionTag) -> &ModeMask {
        &self.masks[RegionTag::ALL.iter().position(|&t| t == tag).expect("listed tag")]
    }

    /// L1_xi norms of `v` and `d1 psi` restricted to each region.
    pub fn region_norms(&self, s: &State<T>) -> [(f64, f64); 3] {
        let d1 = s.psi.d1();
        let mut out = [(0.0, 0.0); 3];
        for (o, m) in out.iter_mut().zip(&self.masks) {
            *o = (
                l1xi_norm_vec(&s.v1, &s.v2, Some(m)).to_f64_lossy(),
                d1.l1xi_norm(Some(m)).to_f64_lossy(),
            );
        }
        out
    }

    pub fn snapshot(&self, s: &State<T>) -> Result<NormSnapshot> {
        let g = *s.grid();
        let (mut h2v, mut h2gp, mut h2gv, mut h1d1, mut h1gp) = (T::zero(), T::zero(), T::zero(), T::zero(), T::zero());
        for i in 0..g.len() {
            let (x1, x2) = g.xi(i);
            let r2 = x1 * x1 + x2 * x2;
            let h1w = T::one() + homogeneous_weight(x1, x2, 1);
            let h2w = h1w + homogeneous_weight(x1, x2, 2);
            let pv = s.v1.coef[i].norm_sqr() + s.v2.coef[i].norm_sqr();
            let pp = s.psi.coef[i].norm_sqr();
            h2v = h2v + h2w * pv;
            h2gp = h2gp + h2w * r2 * pp;
            h2gv = h2gv + h2w * r2 * pv;
            h1d1 = h1d1 + h1w * x1 * x1 * r2 * pp;
            h1gp = h1gp + h1w * r2 * pp;
        }
        let area = g.area();
        let n = |x: T| (x * area).sqrt().to_f64_lossy();

        let m = &self.model;
        let gp1 = m.to_physical(&s.psi.d1())?;
        let gp2 = m.to_physical(&s.psi.d2())?;
        let linf = gp1.val.iter().zip(&gp2.val).map(|(a, b)| (*a * *a + *b * *b).sqrt()).fold(T::zero(), T::max);

        let cube = s.psi.derivative(crate::spectral::Axis::X2, 3);
        let sq = m.product(&cube, &cube)?;
        let w = m.to_physical(&sq)?;
        let dv = m.to_physical(&s.v2.d2())?;
        let tri = dv.val.iter().zip(&w.val).map(|(a, b)| *a * *b).sum::<T>() * g.cell_area();

        Ok(NormSnapshot {
            t: s.t.to_f64_lossy(),
            h2_v: n(h2v),
            h2_grad_psi: n(h2gp),
            h2_grad_v: n(h2gv),
            h1_d1_grad_psi: n(h1d1),
            linf_grad_psi: linf.to_f64_lossy(),
            l1xi_v: l1xi_norm_vec(&s.v1, &s.v2, None).to_f64_lossy(),
            l1xi_d1psi: s.psi.d1().l1xi_norm(None).to_f64_lossy(),
            region_l1xi: self.region_norms(s),
            trilinear: tri.to_f64_lossy(),
            h1_grad_psi: n(h1gp),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{Complex, GridSpec, SpectralField};
    use std::f64::consts::PI;

    fn vector_hs_norm(a: &SpectralField<f64>, b: &SpectralField<f64>, s: u32) -> f64 {
        (crate::spectral::sobolev_norm_sq(a, s) + crate::spectral::sobolev_norm_sq(b, s)).sqrt()
    }

    fn diag(g: GridSpec<f64>) -> Diagnostics<f64> {
        Diagnostics::new(MhdModel::new(g))
    }

    fn random_state(g: GridSpec<f64>, seed: u64) -> State<f64> {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut f = || {
            let mut f = SpectralField::from_fn(g, |_, _, _, _| {
                Complex::new(rng.random_range(-1e-2..1e-2), rng.random_range(-1e-2..1e-2))
            });
            f.symmetrize();
            f.dealias_in_place();
            f
        };
        let (p, a, b) = (f(), f(), f());
        State::new(p, a, b, 0.5).unwrap().sanitize(true).unwrap()
    }

    #[test]
    fn zero_state_snapshot_is_zero() {
        let g = GridSpec::square(16, 8.0 * PI).unwrap();
        let s = diag(g).snapshot(&State::zeros(g)).unwrap();
        assert_eq!(s, NormSnapshot::default());
    }

    #[test]
    fn single_mode_h2_by_hand() {
        // psi = eps sin(k . x) with xi = (1, 2) on the 2 pi torus
        let g = GridSpec::square(16, 2.0 * PI).unwrap();
        let eps = 0.3;
        let mut s = State::zeros(g);
        s.psi.set_pair(1, 2, Complex::new(0.0, -eps / 2.0));
        let snap = diag(g).snapshot(&s).unwrap();
        let (a, b) = (1.0f64, 4.0f64);
        let w = 1.0 + (a + b) + (a * a + a * b + b * b);
        let want = (w * (a + b) * eps * eps / 2.0 * 4.0 * PI * PI).sqrt();
        assert!((snap.h2_grad_psi - want).abs() < 1e-13 * want);
        assert!((snap.linf_grad_psi - eps * 5f64.sqrt()).abs() < 1e-3);
        assert_eq!(snap.trilinear, 0.0);
    }

    #[test]
    fn mode_sums_match_derivative_fields() {
        let g = GridSpec::new(16, 16, 7.0, 9.0).unwrap();
        let st = random_state(g, 4);
        let snap = diag(g).snapshot(&st).unwrap();
        let h2v = vector_hs_norm(&st.v1, &st.v2, 2);
        let gp = vector_hs_norm(&st.psi.d1(), &st.psi.d2(), 2);
        let gv = (vector_hs_norm(&st.v1.d1(), &st.v1.d2(), 2).powi(2)
            + vector_hs_norm(&st.v2.d1(), &st.v2.d2(), 2).powi(2))
        .sqrt();
        let d1 = st.psi.d1();
        let dg = vector_hs_norm(&d1.d1(), &d1.d2(), 1);
        for (x, y) in [(snap.h2_v, h2v), (snap.h2_grad_psi, gp), (snap.h2_grad_v, gv), (snap.h1_d1_grad_psi, dg)] {
            assert!((x - y).abs() <= 1e-12 * y, "{x} vs {y}");
        }
    }

    #[test]
    fn regions_partition_the_total() {
        let g = GridSpec::square(32, 8.0 * PI).unwrap();
        let d = diag(g);
        let st = random_state(g, 9);
        let snap = d.snapshot(&st).unwrap();
        let sv: f64 = snap.region_l1xi.iter().map(|p| p.0).sum();
        let sp: f64 = snap.region_l1xi.iter().map(|p| p.1).sum();
        assert!((sv - snap.l1xi_v).abs() <= 1e-12 * snap.l1xi_v);
        assert!((sp - snap.l1xi_d1psi).abs() <= 1e-12 * snap.l1xi_d1psi);
    }

    #[test]
    fn high_only_field_has_no_low_content() {
        let g = GridSpec::square(32, 8.0 * PI).unwrap();
        let mut s = State::zeros(g);
        // xi = (1.5, 0.5)
        s.psi.set_pair(6, 2, Complex::new(1.0, 0.0));
        let r = diag(g).region_norms(&s);
        assert!(r[0].1 > 0.0);
        assert_eq!((r[1].1, r[2].1), (0.0, 0.0));
    }

    #[test]
    fn single_lo_large_mode_by_hand() {
        let g = GridSpec::square(32, 8.0 * PI).unwrap();
        let mut s = State::zeros(g);
        // xi = (0.5, 0.25): |xi1| = 0.5 > |xi|^2 = 0.3125
        let c = Complex::new(0.3, 0.4);
        s.psi.set_pair(2, 1, c);
        let r = diag(g).region_norms(&s);
        let want = 2.0 * 0.5 * c.norm() * 0.25 * 0.25 * g.area() / (4.0 * PI * PI);
        assert!((r[2].1 - want).abs() < 1e-15);
        assert_eq!(r[0].1 + r[1].1, 0.0);
    }
}
