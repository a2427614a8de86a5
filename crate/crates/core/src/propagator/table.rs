use super::multipliers::{multipliers, ModeMultipliers};
use crate::error::Result;
use crate::scalar::Real;
use crate::spectral::GridSpec;
use crate::state::State;

/// Multipliers of every grid mode for one fixed time step.
#[derive(Debug, Clone, PartialEq)]
pub struct PropagatorTable<T> {
    grid: GridSpec<T>,
    dt: T,
    entries: Vec<ModeMultipliers<T>>,
}

impl<T: Real> PropagatorTable<T> {
    pub fn new(grid: GridSpec<T>, dt: T) -> Result<Self> {
        let entries = (0..grid.len())
            .map(|i| {
                let (x1, x2) = grid.xi(i);
                let mut m = multipliers(x1, x2, dt)?;
                // keep m21 odd under xi -> -xi on the Nyquist lines too
                let (o1, o2) = grid.xi_odd(i);
                m.m21 = o1 * o2 * m.m12;
                Ok(m)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { grid, dt, entries })
    }

    pub fn dt(&self) -> T {
        self.dt
    }

    pub fn grid(&self) -> &GridSpec<T> {
        &self.grid
    }

    pub fn entry(&self, idx: usize) -> &ModeMultipliers<T> {
        &self.entries[idx]
    }

    /// Linear flow over `dt`; advances `t` by `dt`.
    pub fn apply(&self, s: &State<T>) -> Result<State<T>> {
        let mut out = self.apply_untimed(s)?;
        out.t = s.t + self.dt;
        Ok(out)
    }

    /// Linear flow over `dt` applied to a tendency; `t` is left unchanged.
    pub fn apply_untimed(&self, s: &State<T>) -> Result<State<T>> {
        self.grid.check_same(s.grid())?;
        let mut out = s.clone();
        for (i, m) in self.entries.iter().enumerate() {
            let [p, a, b] = m.apply(s.psi.coef[i], s.v1.coef[i], s.v2.coef[i]);
            out.psi.coef[i] = p;
            out.v1.coef[i] = a;
            out.v2.coef[i] = b;
        }
        Ok(out)
    }
}

/// Exact homogeneous (linear) evolution of `s` over `dt`.
pub fn apply_homogeneous<T: Real>(s: &State<T>, dt: T) -> Result<State<T>> {
    PropagatorTable::new(*s.grid(), dt)?.apply(s)
}
