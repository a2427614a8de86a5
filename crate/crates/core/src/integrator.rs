//! Integrating-factor (Lawson) Runge-Kutta stepping: the linear part is
//! carried exactly by the propagator, the nonlinearity explicitly.

use crate::error::{MhdError, Result};
use crate::propagator::PropagatorTable;
use crate::scalar::Real;
use crate::spectral::GridSpec;
use crate::state::{MhdModel, State};

/// Explicit part of the right-hand side.
pub trait Nonlinearity<T: Real> {
    /// Tendency `(F, G1, G2)` at the state `s` and time `s.t`.
    fn eval(&self, s: &State<T>) -> Result<State<T>>;
}

impl<T: Real> Nonlinearity<T> for MhdModel<T> {
    fn eval(&self, s: &State<T>) -> Result<State<T>> {
        Ok(self.rhs_full(s)?.tendency(s.t))
    }
}

/// No nonlinearity: the stepper reproduces the linear flow.
#[derive(Debug, Clone, Copy, Default)]
pub struct LinearOnly;

impl<T: Real> Nonlinearity<T> for LinearOnly {
    fn eval(&self, s: &State<T>) -> Result<State<T>> {
        Ok(State::zeros(*s.grid()).with_time(s.t))
    }
}

/// Explicit time-dependent forcing added to an inner nonlinearity.
pub struct Forced<N, F> {
    pub inner: N,
    pub forcing: F,
}

impl<T, N, F> Nonlinearity<T> for Forced<N, F>
where
    T: Real,
    N: Nonlinearity<T>,
    F: Fn(T, &GridSpec<T>) -> State<T>,
{
    fn eval(&self, s: &State<T>) -> Result<State<T>> {
        let k = self.inner.eval(s)?;
        k.axpy(T::one(), &(self.forcing)(s.t, s.grid()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RkOrder {
    Two,
    Four,
}

impl RkOrder {
    pub fn from_int(order: u32) -> Result<Self> {
        match order {
            2 => Ok(RkOrder::Two),
            4 => Ok(RkOrder::Four),
            o => Err(MhdError::InvalidArgument(format!("integrator order must be 2 or 4, got {o}"))),
        }
    }

    pub fn as_int(self) -> u32 {
        match self {
            RkOrder::Two => 2,
            RkOrder::Four => 4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepperConfig<T> {
    pub dt: T,
    pub order: RkOrder,
    pub dealias: bool,
    pub max_steps: usize,
    /// Cap on the L2 norm of any field.
    pub blowup_threshold: T,
}

impl<T: Real> StepperConfig<T> {
    pub fn new(dt: T, order: RkOrder) -> Result<Self> {
        let cfg = Self { dt, order, dealias: true, max_steps: usize::MAX, blowup_threshold: T::lit(1e6) };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.dt > T::zero() && self.dt.is_finite()) {
            return Err(MhdError::InvalidArgument(format!("dt must be positive, got {}", self.dt)));
        }
        if !(self.blowup_threshold > T::zero()) {
            return Err(MhdError::InvalidArgument("blowup threshold must be positive".into()));
        }
        Ok(())
    }
}

/// Precomputed propagators for one grid and step size.
#[derive(Debug, Clone)]
pub struct Stepper<T> {
    cfg: StepperConfig<T>,
    full: PropagatorTable<T>,
    half: PropagatorTable<T>,
}

impl<T: Real> Stepper<T> {
    pub fn new(grid: GridSpec<T>, cfg: StepperConfig<T>) -> Result<Self> {
        cfg.validate()?;
        Ok(Self {
            cfg,
            full: PropagatorTable::new(grid, cfg.dt)?,
            half: PropagatorTable::new(grid, cfg.dt * T::lit(0.5))?,
        })
    }

    pub fn config(&self) -> &StepperConfig<T> {
        &self.cfg
    }

    /// Advance `s` by one step of `dt`.
    pub fn step<N: Nonlinearity<T>>(&self, s: &State<T>, nl: &N) -> Result<State<T>> {
        let h = self.cfg.dt;
        let half_h = h * T::lit(0.5);
        let e = |x: &State<T>| self.full.apply_untimed(x);
        let e2 = |x: &State<T>| self.half.apply_untimed(x);
        let t = s.t;
        let next = match self.cfg.order {
            RkOrder::Two => {
                let k1 = nl.eval(s)?;
                let pred = e(&s.axpy(h, &k1)?)?.with_time(t + h);
                let k2 = nl.eval(&pred)?;
                e(&s.axpy(half_h, &k1)?)?.axpy(half_h, &k2)?
            }
            RkOrder::Four => {
                let k1 = nl.eval(s)?;
                let a = e2(&s.axpy(half_h, &k1)?)?.with_time(t + half_h);
                let k2 = nl.eval(&a)?;
                let eu2 = e2(s)?;
                let b = eu2.axpy(half_h, &k2)?.with_time(t + half_h);
                let k3 = nl.eval(&b)?;
                let eu = e(s)?;
                let c = eu.axpy(h, &e2(&k3)?)?.with_time(t + h);
                let k4 = nl.eval(&c)?;
                let mid = e2(&k2.axpy(T::one(), &k3)?)?;
                let sum = e(&k1)?.axpy(T::lit(2.0), &mid)?.axpy(T::one(), &k4)?;
                eu.axpy(h / T::lit(6.0), &sum)?
            }
        };
        let next = next.with_time(t + h).sanitize(self.cfg.dealias)?;
        self.check_blowup(&next)?;
        Ok(next)
    }

    fn check_blowup(&self, s: &State<T>) -> Result<()> {
        if !s.is_finite() {
            return Err(MhdError::Blowup { t: s.t.to_f64_lossy(), reason: "non-finite coefficient".into() });
        }
        let norm = s.fields().iter().map(|f| f.l2_norm()).fold(T::zero(), T::max);
        if norm > self.cfg.blowup_threshold {
            return Err(MhdError::Blowup {
                t: s.t.to_f64_lossy(),
                reason: format!("field norm {norm:e} exceeds {:e}", self.cfg.blowup_threshold),
            });
        }
        Ok(())
    }
}

/// Number of whole steps of `dt` covering `span`, tolerant to rounding.
pub fn step_count<T: Real>(span: T, dt: T) -> usize {
    let r = span / dt;
    let n = r.round();
    let n = if (r - n).abs() <= T::lit(1e-9) * n.max(T::one()) { n } else { r.ceil() };
    n.to_f64_lossy().max(0.0) as usize
}

/// Step from `s0` to `t_end`, calling `observer(state, step)` every
/// `sample_every` steps and after the last one.
///
/// The step count is `round((t_end - t0) / dt)` when that is an integer to
/// rounding, otherwise the ceiling; the final time is then `t0 + steps * dt`.
pub fn integrate<T, N, O>(
    s0: &State<T>,
    stepper: &Stepper<T>,
    nl: &N,
    t_end: T,
    sample_every: usize,
    mut observer: O,
) -> Result<State<T>>
where
    T: Real,
    N: Nonlinearity<T>,
    O: FnMut(&State<T>, usize) -> Result<()>,
{
    if t_end < s0.t {
        return Err(MhdError::InvalidArgument(format!("t_end {} precedes the start time {}", t_end, s0.t)));
    }
    let steps = step_count(t_end - s0.t, stepper.cfg.dt);
    if steps > stepper.cfg.max_steps {
        return Err(MhdError::StepBudget(stepper.cfg.max_steps));
    }
    let every = sample_every.max(1);
    let t0 = s0.t;
    let mut s = s0.clone();
    for k in 1..=steps {
        let mut next = stepper.step(&s, nl)?;
        // pin the clock to avoid drift from repeated addition
        next.t = t0 + T::of_usize(k) * stepper.cfg.dt;
        s = next;
        if k % every == 0 || k == steps {
            observer(&s, k)?;
        }
    }
    Ok(s)
}

/// Advective Courant number `dt * max(|v1| / h1 + |v2| / h2)` on the grid.
pub fn advective_cfl<T: Real>(model: &MhdModel<T>, s: &State<T>, dt: T) -> Result<T> {
    let g = *s.grid();
    let v1 = model.to_physical(&s.v1)?;
    let v2 = model.to_physical(&s.v2)?;
    let m = v1
        .val
        .iter()
        .zip(&v2.val)
        .map(|(a, b)| a.abs() / g.h1() + b.abs() / g.h2())
        .fold(T::zero(), T::max);
    Ok(dt * m)
}
