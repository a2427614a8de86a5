//! Subcommand bodies. Each `run_*` works in memory; the `cmd_*` wrappers
//! write artifacts under `output_path`.

use std::collections::VecDeque;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use aniso_mhd::diagnostics::{
    a0, energy_identity_residual, theorem_audit, write_row, A0Report, Diagnostics, DiagnosticsLedger, TheoremReport,
    CSV_HEADER,
};
use aniso_mhd::integrator::{integrate, step_count, LinearOnly, Nonlinearity, RkOrder, Stepper, StepperConfig};
use aniso_mhd::oracle::mode_ode_solve;
use aniso_mhd::propagator::{
    bounds_audit, m11_pointwise_bound, multipliers, pointwise_sweep, xi1_m12_pointwise_bound, AuditDomain,
    BoundsReport, XiLattice, MIXED_M11, MIXED_M12,
};
use aniso_mhd::spectral::Complex;
use aniso_mhd::state::{MhdModel, State};
use aniso_mhd::MhdError;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::config::{InitKind, RunConfig};
use crate::error::{CliError, Result};
use crate::init::{grid, make_initial_data};
use crate::summary::FlatJson;

pub const TIMESERIES_FILE: &str = "timeseries.csv";
pub const SUMMARY_FILE: &str = "summary.json";

/// Why a run stopped.
#[derive(Debug, Clone, PartialEq)]
pub enum ExitReason {
    Completed,
    Blowup { t: f64, reason: String },
}

impl ExitReason {
    pub fn name(&self) -> &'static str {
        match self {
            ExitReason::Completed => "completed",
            ExitReason::Blowup { .. } => "blowup",
        }
    }
}

#[derive(Debug, Clone)]
pub struct SimOutcome {
    pub ledger: DiagnosticsLedger,
    pub a0: A0Report,
    pub report: TheoremReport,
    /// Largest interpolation ratio over the sampled prefixes, if ever defined.
    pub interp_ratio_max: Option<f64>,
    pub energy_residual_final: Option<f64>,
    pub exit: ExitReason,
    pub csv: String,
    pub final_state: State<f64>,
}

impl SimOutcome {
    pub fn summary(&self) -> FlatJson {
        let mut j = FlatJson::new();
        let a0v = self.a0.a0();
        let a1t = self.ledger.a1t().unwrap_or(0.0);
        let a2t = self.ledger.a2t().unwrap_or(0.0);
        j.set("a0", a0v)
            .set("a1t", a1t)
            .set("a2t", a2t)
            .set("at", a1t + a2t)
            .set("ratio_at_a0", self.report.final_ratio)
            .set("interp_ratio_max", self.interp_ratio_max)
            .set("energy_residual_final", self.energy_residual_final)
            .set("bounded_verdict", self.report.bounded)
            .set("exit_reason", self.exit.name())
            .set("t_last", self.ledger.last_time().unwrap_or(0.0))
            .set("max_ratio", self.report.max_ratio)
            .set("tail_fraction_grad_v", self.report.tail_fraction_grad_v)
            .set("tail_fraction_d1_grad_psi", self.report.tail_fraction_d1_grad_psi);
        j
    }
}

fn stepper(cfg: &RunConfig, dt: f64) -> Result<Stepper<f64>> {
    let mut sc = StepperConfig::new(dt, RkOrder::from_int(cfg.integrator_order)?)?;
    sc.blowup_threshold = cfg.blowup_threshold;
    Ok(Stepper::new(grid(cfg)?, sc)?)
}

/// Integrate from `s0` with the configured nonlinearity, calling `each` after every step.
fn drive(
    cfg: &RunConfig,
    s0: &State<f64>,
    dt: f64,
    each: impl FnMut(&State<f64>, usize) -> aniso_mhd::Result<()>,
) -> aniso_mhd::Result<State<f64>> {
    let st = stepper(cfg, dt).map_err(|e| MhdError::InvalidArgument(e.to_string()))?;
    if cfg.linear_only {
        run_with(&st, &LinearOnly, s0, cfg.t_end, each)
    } else {
        run_with(&st, &MhdModel::new(*s0.grid()), s0, cfg.t_end, each)
    }
}

fn run_with<N: Nonlinearity<f64>>(
    st: &Stepper<f64>,
    nl: &N,
    s0: &State<f64>,
    t_end: f64,
    each: impl FnMut(&State<f64>, usize) -> aniso_mhd::Result<()>,
) -> aniso_mhd::Result<State<f64>> {
    integrate(s0, st, nl, t_end, 1, each)
}

/// Full simulation in memory: ledger every step, CSV row every `sample_every` steps.
pub fn run_simulation(cfg: &RunConfig) -> Result<SimOutcome> {
    cfg.validate()?;
    let s0 = make_initial_data(cfg)?;
    let model = MhdModel::new(*s0.grid());
    let diag = Diagnostics::new(model.clone());
    let a0r = a0(&s0, cfg.a0_t_cut, cfg.a0_quad_dt)?;
    let steps = step_count(cfg.t_end, cfg.dt);

    let mut ledger = DiagnosticsLedger::new();
    let first = diag.snapshot(&s0)?;
    ledger.update(first)?;
    let mut csv = String::from(CSV_HEADER);
    csv.push('\n');
    if steps > 0 {
        write_row(&mut csv, &first);
    }
    let mut interp_max: Option<f64> = None;
    let mut window: VecDeque<State<f64>> = VecDeque::from([s0.clone()]);
    let mut last = s0.clone();
    let result = drive(cfg, &s0, cfg.dt, |s, k| {
        let snap = diag.snapshot(s)?;
        ledger.update(snap)?;
        if k % cfg.sample_every == 0 || k == steps {
            write_row(&mut csv, &snap);
            if let Ok(r) = ledger.interpolation_ratio() {
                interp_max = Some(interp_max.map_or(r, |m| m.max(r)));
            }
        }
        window.push_back(s.clone());
        if window.len() > 3 {
            window.pop_front();
        }
        last = s.clone();
        Ok(())
    });
    let exit = match result {
        Ok(_) => ExitReason::Completed,
        Err(MhdError::Blowup { t, reason }) => ExitReason::Blowup { t, reason },
        Err(e) => return Err(e.into()),
    };
    let energy_residual_final = if window.len() == 3 && exit == ExitReason::Completed {
        let rhs = model.rhs_full(&window[1])?;
        Some(energy_identity_residual(&model, &window[1], &rhs, &window[0], &window[2], cfg.dt)?)
    } else {
        None
    };
    let report = theorem_audit(&ledger, a0r.a0(), cfg.ratio_cap);
    Ok(SimOutcome {
        ledger,
        a0: a0r,
        report,
        interp_ratio_max: interp_max,
        energy_residual_final,
        exit,
        csv,
        final_state: last,
    })
}

fn write(dir: &Path, name: &str, body: &str) -> Result<PathBuf> {
    std::fs::create_dir_all(dir).map_err(|source| CliError::Io { path: dir.display().to_string(), source })?;
    let p = dir.join(name);
    std::fs::write(&p, body).map_err(|source| CliError::Io { path: p.display().to_string(), source })?;
    Ok(p)
}

/// `simulate`: writes the time series and summary; a blow-up is reported
/// after both files are written.
pub fn cmd_simulate(cfg: &RunConfig) -> Result<()> {
    let out = run_simulation(cfg)?;
    let dir = Path::new(&cfg.output_path);
    write(dir, TIMESERIES_FILE, &out.csv)?;
    write(dir, SUMMARY_FILE, &out.summary().render())?;
    match out.exit {
        ExitReason::Completed => Ok(()),
        ExitReason::Blowup { t, reason } => Err(CliError::Blowup { t, reason }),
    }
}

/// Thread pool of width `ANISO_MHD_THREADS`, one thread when unset.
pub fn pool() -> Result<rayon::ThreadPool> {
    let width = match std::env::var("ANISO_MHD_THREADS") {
        Ok(v) => v.trim().parse::<usize>().map_err(|_| CliError::config(0, format!("ANISO_MHD_THREADS: bad value '{v}'")))?,
        Err(_) => 1,
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(width.max(1))
        .build()
        .map_err(|e| MhdError::InvalidArgument(e.to_string()).into())
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub epsilon: f64,
    pub a0: f64,
    pub at: f64,
    pub ratio_at_a0: f64,
    pub max_ratio: f64,
    pub bounded: bool,
    pub exit_reason: &'static str,
    pub t_last: f64,
}

pub const SWEEP_HEADER: &str = "epsilon,a0,at,ratio_at_a0,max_ratio,bounded_verdict,exit_reason,t_last";

/// `sweep`: one simulation per epsilon, each into its own subdirectory.
pub fn run_sweep(cfg: &RunConfig, write_runs: bool) -> Result<Vec<SweepRow>> {
    let pool = pool()?;
    let runs: Vec<Result<SweepRow>> = pool.install(|| {
        cfg.sweep_epsilons
            .par_iter()
            .enumerate()
            .map(|(i, &eps)| {
                let sub = RunConfig {
                    epsilon: eps,
                    output_path: format!("{}/eps_{i:02}", cfg.output_path),
                    ..cfg.clone()
                };
                let out = run_simulation(&sub)?;
                if write_runs {
                    let dir = Path::new(&sub.output_path);
                    write(dir, TIMESERIES_FILE, &out.csv)?;
                    write(dir, SUMMARY_FILE, &out.summary().render())?;
                }
                Ok(SweepRow {
                    epsilon: eps,
                    a0: out.a0.a0(),
                    at: out.ledger.at().unwrap_or(0.0),
                    ratio_at_a0: out.report.final_ratio,
                    max_ratio: out.report.max_ratio,
                    bounded: out.report.bounded,
                    exit_reason: out.exit.name(),
                    t_last: out.ledger.last_time().unwrap_or(0.0),
                })
            })
            .collect()
    });
    runs.into_iter().collect()
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut s = String::from(SWEEP_HEADER);
    s.push('\n');
    for r in rows {
        let _ = writeln!(
            s,
            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{},{},{:.16e}",
            r.epsilon, r.a0, r.at, r.ratio_at_a0, r.max_ratio, r.bounded, r.exit_reason, r.t_last
        );
    }
    s
}

pub fn cmd_sweep(cfg: &RunConfig) -> Result<()> {
    let rows = run_sweep(cfg, true)?;
    write(Path::new(&cfg.output_path), "sweep.csv", &sweep_csv(&rows))?;
    Ok(())
}

/// Outcome of the propagator audit.
#[derive(Debug, Clone)]
pub struct PropagatorAudit {
    pub oracle_max_rel_err: f64,
    pub pointwise: (f64, f64),
    pub bounds: BoundsReport,
    pub bounds_fine: BoundsReport,
}

impl PropagatorAudit {
    /// Largest relative change of a mixed-norm series under doubled resolution.
    pub fn resolution_change(&self, quantity: &str) -> f64 {
        let a = self.bounds.series(quantity);
        let b = self.bounds_fine.series(quantity);
        a.iter().zip(&b).map(|(x, y)| ((x.1 - y.1) / y.1).abs()).fold(0.0, f64::max)
    }
}

/// Relative error of the closed-form multipliers against the RK4 oracle over
/// `samples` seeded modes `xi in [-8, 8]^2`, `t in [0, 2]`, with
/// divergence-free initial values.
pub fn oracle_comparison(samples: usize, seed: u64, rk_dt: f64) -> Result<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cases: Vec<((f64, f64), f64, [Complex<f64>; 3])> = (0..samples)
        .map(|_| {
            let xi: (f64, f64) = (rng.random_range(-8.0..8.0), rng.random_range(-8.0..8.0));
            let t = rng.random_range(0.0..2.0);
            let mut c = || Complex::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            // the multipliers act on solenoidal data: v along xi-perp
            let (psi, amp) = (c(), c());
            let r = (xi.0 * xi.0 + xi.1 * xi.1).sqrt();
            (xi, t, [psi, amp.scale(-xi.1 / r), amp.scale(xi.0 / r)])
        })
        .collect();
    let errs: Vec<Result<f64>> = cases
        .par_iter()
        .map(|&(xi, t, y0)| {
            let m = multipliers(xi.0, xi.1, t)?;
            let got = m.apply(y0[0], y0[1], y0[2]);
            let want = mode_ode_solve(xi, y0, t, rk_dt)?;
            let num: f64 = (0..3).map(|k| (got[k] - want[k]).norm_sqr()).sum::<f64>().sqrt();
            let den: f64 = (0..3).map(|k| want[k].norm_sqr()).sum::<f64>().sqrt();
            Ok(if num == 0.0 { 0.0 } else { num / den })
        })
        .collect();
    errs.into_iter().try_fold(0.0f64, |m, e| Ok(m.max(e?)))
}

/// `n` logarithmically spaced times on `[a, b]`.
pub fn log_times(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| a * (b / a).powf(i as f64 / (n - 1) as f64)).collect()
}

pub const AUDIT_T_RANGE: (f64, f64) = (0.05, 5.0);
pub const AUDIT_LATTICE: usize = 400;

pub fn run_propagator_audit(cfg: &RunConfig) -> Result<PropagatorAudit> {
    let times = log_times(AUDIT_T_RANGE.0, AUDIT_T_RANGE.1, 12);
    let coarse = XiLattice::quadrature_box(AUDIT_LATTICE, 1.0);
    let fine = XiLattice::quadrature_box(2 * AUDIT_LATTICE, 1.0);
    Ok(PropagatorAudit {
        oracle_max_rel_err: oracle_comparison(cfg.audit_samples, cfg.seed, 1e-5)?,
        pointwise: pointwise_sweep(AuditDomain::SetA, 100_000, 20.0)?,
        bounds: bounds_audit(&coarse, &times, AuditDomain::SetA)?,
        bounds_fine: bounds_audit(&fine, &times, AuditDomain::SetA)?,
    })
}

pub fn cmd_propagator_audit(cfg: &RunConfig) -> Result<()> {
    let a = run_propagator_audit(cfg)?;
    let dir = Path::new(&cfg.output_path);
    write(dir, "propagator_audit.csv", &a.bounds.to_csv())?;
    let mut j = FlatJson::new();
    j.set("oracle_max_rel_err", a.oracle_max_rel_err)
        .set("sup_m11_weighted", a.pointwise.0)
        .set("sup_m11_bound", m11_pointwise_bound())
        .set("sup_xi1_m12_weighted", a.pointwise.1)
        .set("sup_xi1_m12_bound", xi1_m12_pointwise_bound())
        .set("mixed_m11_variation", a.bounds.variation(MIXED_M11))
        .set("mixed_m12_variation", a.bounds.variation(MIXED_M12))
        .set("mixed_m11_resolution_change", a.resolution_change(MIXED_M11))
        .set("mixed_m12_resolution_change", a.resolution_change(MIXED_M12));
    write(dir, "propagator_summary.json", &j.render())?;
    Ok(())
}

/// Mean energy-identity residual over the interior steps of a run at step `dt`.
pub fn mean_energy_residual(cfg: &RunConfig, dt: f64) -> Result<f64> {
    if cfg.linear_only {
        return Err(CliError::config(0, "energy-audit checks the nonlinear identity; unset linear_only"));
    }
    let s0 = make_initial_data(cfg)?;
    let model = MhdModel::new(*s0.grid());
    let mut window: VecDeque<State<f64>> = VecDeque::from([s0.clone()]);
    let (mut sum, mut count) = (0.0, 0usize);
    drive(cfg, &s0, dt, |s, _| {
        window.push_back(s.clone());
        if window.len() > 3 {
            window.pop_front();
        }
        if window.len() == 3 {
            let rhs = model.rhs_full(&window[1])?;
            sum += energy_identity_residual(&model, &window[1], &rhs, &window[0], &window[2], dt)?;
            count += 1;
        }
        Ok(())
    })?;
    if count == 0 {
        return Err(MhdError::InvalidArgument("energy audit needs at least two steps".into()).into());
    }
    Ok(sum / count as f64)
}

pub fn cmd_energy_audit(cfg: &RunConfig) -> Result<()> {
    let (a, b) = (mean_energy_residual(cfg, cfg.dt)?, mean_energy_residual(cfg, cfg.dt / 2.0)?);
    let dir = Path::new(&cfg.output_path);
    write(dir, "energy_audit.csv", &format!("dt,mean_residual\n{:.16e},{a:.16e}\n{:.16e},{b:.16e}\n", cfg.dt, cfg.dt / 2.0))?;
    let mut j = FlatJson::new();
    j.set("dt", cfg.dt).set("mean_residual", a).set("mean_residual_half_dt", b).set("reduction_factor", a / b);
    write(dir, "energy_summary.json", &j.render())?;
    Ok(())
}

/// Interpolation ratio of one trajectory and of the same trajectory with `psi` doubled.
pub fn trajectory_ratio(cfg: &RunConfig) -> Result<(f64, f64)> {
    let s0 = make_initial_data(cfg)?;
    let diag = Diagnostics::new(MhdModel::new(*s0.grid()));
    let (mut l, mut l2) = (DiagnosticsLedger::new(), DiagnosticsLedger::new());
    let doubled = |s: &State<f64>| State { psi: s.psi.scaled(2.0), ..s.clone() };
    l.update(diag.snapshot(&s0)?)?;
    l2.update(diag.snapshot(&doubled(&s0))?)?;
    drive(cfg, &s0, cfg.dt, |s, _| {
        l.update(diag.snapshot(s)?)?;
        l2.update(diag.snapshot(&doubled(s))?)
    })?;
    Ok((l.interpolation_ratio()?, l2.interpolation_ratio()?))
}

/// Corpus member `i`: random band-limited data with seed `cfg.seed + i`.
pub fn corpus_config(cfg: &RunConfig, i: usize) -> RunConfig {
    RunConfig { init_kind: InitKind::RandomBandlimited, seed: cfg.seed + i as u64, ..cfg.clone() }
}

pub fn run_interp_audit(cfg: &RunConfig) -> Result<Vec<(f64, f64)>> {
    let pool = pool()?;
    let rows: Vec<Result<(f64, f64)>> =
        pool.install(|| (0..cfg.corpus_size).into_par_iter().map(|i| trajectory_ratio(&corpus_config(cfg, i))).collect());
    rows.into_iter().collect()
}

pub fn cmd_interp_audit(cfg: &RunConfig) -> Result<()> {
    let rows = run_interp_audit(cfg)?;
    let mut csv = String::from("seed,ratio,ratio_psi_doubled\n");
    for (i, (a, b)) in rows.iter().enumerate() {
        let _ = writeln!(csv, "{},{a:.16e},{b:.16e}", cfg.seed + i as u64);
    }
    let dir = Path::new(&cfg.output_path);
    write(dir, "interp_audit.csv", &csv)?;
    let max = rows.iter().map(|r| r.0).fold(0.0, f64::max);
    let dev = rows.iter().map(|r| ((r.0 - r.1) / r.0).abs()).fold(0.0, f64::max);
    let mut j = FlatJson::new();
    j.set("corpus_size", rows.len()).set("ratio_max", max).set("scaling_defect_max", dev);
    write(dir, "interp_summary.json", &j.render())?;
    Ok(())
}
