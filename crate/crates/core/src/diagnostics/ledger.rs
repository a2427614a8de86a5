use std::fmt::Write as _;

use super::norms::NormSnapshot;
use crate::error::{MhdError, Result};

/// Running `A`-functional values after one update.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LedgerPoint {
    pub t: f64,
    pub a1t: f64,
    pub a2t: f64,
    pub int_h2_grad_v_sq: f64,
    pub int_h1_d1_grad_psi_sq: f64,
}

impl LedgerPoint {
    pub fn at(&self) -> f64 {
        self.a1t + self.a2t
    }
}

/// Running maxima and trapezoid time-integrals over a trajectory.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct DiagnosticsLedger {
    pub sup_h2_v: f64,
    pub sup_h2_grad_psi: f64,
    pub sup_h1_grad_psi: f64,
    pub int_h2_grad_v_sq: f64,
    pub int_h1_d1_grad_psi_sq: f64,
    pub int_l1xi_v_sq: f64,
    pub int_l1xi_d1psi_sq: f64,
    pub int_linf4_grad_psi: f64,
    pub history: Vec<NormSnapshot>,
    pub points: Vec<LedgerPoint>,
}

fn trap(a: f64, b: f64, dt: f64) -> f64 {
    0.5 * dt * (a + b)
}

impl DiagnosticsLedger {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_empty(&self) -> bool {
        self.history.is_empty()
    }

    pub fn last_time(&self) -> Option<f64> {
        self.history.last().map(|s| s.t)
    }

    pub fn update(&mut self, snap: NormSnapshot) -> Result<()> {
        if let Some(prev) = self.history.last() {
            if snap.t < prev.t {
                return Err(MhdError::OutOfOrder { last: prev.t, got: snap.t });
            }
            let dt = snap.t - prev.t;
            self.int_h2_grad_v_sq += trap(prev.h2_grad_v.powi(2), snap.h2_grad_v.powi(2), dt);
            self.int_h1_d1_grad_psi_sq += trap(prev.h1_d1_grad_psi.powi(2), snap.h1_d1_grad_psi.powi(2), dt);
            self.int_l1xi_v_sq += trap(prev.l1xi_v.powi(2), snap.l1xi_v.powi(2), dt);
            self.int_l1xi_d1psi_sq += trap(prev.l1xi_d1psi.powi(2), snap.l1xi_d1psi.powi(2), dt);
            self.int_linf4_grad_psi += trap(prev.linf_grad_psi.powi(4), snap.linf_grad_psi.powi(4), dt);
        }
        self.sup_h2_v = self.sup_h2_v.max(snap.h2_v);
        self.sup_h2_grad_psi = self.sup_h2_grad_psi.max(snap.h2_grad_psi);
        self.sup_h1_grad_psi = self.sup_h1_grad_psi.max(snap.h1_grad_psi);
        self.history.push(snap);
        self.points.push(LedgerPoint {
            t: snap.t,
            a1t: self.a1t_unchecked(),
            a2t: self.a2t_unchecked(),
            int_h2_grad_v_sq: self.int_h2_grad_v_sq,
            int_h1_d1_grad_psi_sq: self.int_h1_d1_grad_psi_sq,
        });
        Ok(())
    }

    fn a1t_unchecked(&self) -> f64 {
        self.sup_h2_v + self.sup_h2_grad_psi + self.int_h2_grad_v_sq.sqrt() + self.int_h1_d1_grad_psi_sq.sqrt()
    }

    fn a2t_unchecked(&self) -> f64 {
        self.int_l1xi_v_sq.sqrt() + self.int_l1xi_d1psi_sq.sqrt()
    }

    fn non_empty(&self) -> Result<()> {
        if self.is_empty() {
            Err(MhdError::EmptyLedger)
        } else {
            Ok(())
        }
    }

    pub fn a1t(&self) -> Result<f64> {
        self.non_empty()?;
        Ok(self.a1t_unchecked())
    }

    pub fn a2t(&self) -> Result<f64> {
        self.non_empty()?;
        Ok(self.a2t_unchecked())
    }

    pub fn at(&self) -> Result<f64> {
        Ok(self.a1t()? + self.a2t()?)
    }

    /// `||grad psi||_{L^4_T L^inf} / (||d1 grad psi||^{1/2}_{L^2_T H^1} ||grad psi||^{1/2}_{L^inf_T H^1})`.
    pub fn interpolation_ratio(&self) -> Result<f64> {
        self.non_empty()?;
        let sup_h1 = self.history.iter().map(|s| s.h1_grad_psi).fold(0.0, f64::max);
        let den = self.int_h1_d1_grad_psi_sq.powf(0.25) * sup_h1.sqrt();
        if !(den > 0.0) {
            return Err(MhdError::ZeroDenominator("no xi1 content in psi over the trajectory"));
        }
        Ok(self.int_linf4_grad_psi.powf(0.25) / den)
    }

    /// One row per snapshot with the fixed column order of [`CSV_HEADER`].
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(64 + 400 * self.history.len());
        out.push_str(CSV_HEADER);
        out.push('\n');
        for s in &self.history {
            write_row(&mut out, s);
        }
        out
    }
}

pub const CSV_HEADER: &str = "t,h2_v,h2_grad_psi,h2_grad_v,h1_d1_grad_psi,linf_grad_psi,l1xi_v,l1xi_d1psi,\
hi_v,hi_d1psi,lo_small_v,lo_small_d1psi,lo_large_v,lo_large_d1psi,trilinear";

pub fn write_row(out: &mut String, s: &NormSnapshot) {
    let r = &s.region_l1xi;
    let vals = [
        s.t,
        s.h2_v,
        s.h2_grad_psi,
        s.h2_grad_v,
        s.h1_d1_grad_psi,
        s.linf_grad_psi,
        s.l1xi_v,
        s.l1xi_d1psi,
        r[0].0,
        r[0].1,
        r[1].0,
        r[1].1,
        r[2].0,
        r[2].1,
        s.trilinear,
    ];
    for (i, v) in vals.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        let _ = write!(out, "{v:.16e}");
    }
    out.push('\n');
}

/// Outcome of the small-data boundedness check.
#[derive(Debug, Clone, PartialEq)]
pub struct TheoremReport {
    /// `(T, A_T / A_0)` at every ledger point.
    pub ratio_series: Vec<(f64, f64)>,
    pub final_ratio: f64,
    pub max_ratio: f64,
    /// Share of `||grad v||^2_{L^2 H^2}` accumulated over the last 10% of the run.
    pub tail_fraction_grad_v: f64,
    /// Share of `||d1 grad psi||^2_{L^2 H^1}` accumulated over the last 10% of the run.
    pub tail_fraction_d1_grad_psi: f64,
    pub bounded: bool,
}

/// Value of a running integral at time `t` by linear interpolation between ledger points.
fn integral_at(points: &[LedgerPoint], t: f64, pick: impl Fn(&LedgerPoint) -> f64) -> f64 {
    match points.iter().position(|p| p.t >= t) {
        None => points.last().map(&pick).unwrap_or(0.0),
        Some(0) => pick(&points[0]),
        Some(k) => {
            let (a, b) = (&points[k - 1], &points[k]);
            let w = if b.t > a.t { (t - a.t) / (b.t - a.t) } else { 1.0 };
            pick(a) + w * (pick(b) - pick(a))
        }
    }
}

fn tail_fraction(points: &[LedgerPoint], pick: impl Fn(&LedgerPoint) -> f64 + Copy) -> f64 {
    let (Some(first), Some(last)) = (points.first(), points.last()) else {
        return 0.0;
    };
    let total = pick(last);
    if total <= 0.0 {
        return 0.0;
    }
    let cut = last.t - 0.1 * (last.t - first.t);
    (total - integral_at(points, cut, pick)) / total
}

pub fn theorem_audit(ledger: &DiagnosticsLedger, a0: f64, ratio_cap: f64) -> TheoremReport {
    let ratio = |at: f64| {
        if at == 0.0 {
            0.0
        } else if a0 > 0.0 {
            at / a0
        } else {
            f64::INFINITY
        }
    };
    let ratio_series: Vec<(f64, f64)> = ledger.points.iter().map(|p| (p.t, ratio(p.at()))).collect();
    let final_ratio = ratio_series.last().map(|p| p.1).unwrap_or(0.0);
    let max_ratio = ratio_series.iter().map(|p| p.1).fold(0.0, f64::max);
    TheoremReport {
        final_ratio,
        max_ratio,
        tail_fraction_grad_v: tail_fraction(&ledger.points, |p| p.int_h2_grad_v_sq),
        tail_fraction_d1_grad_psi: tail_fraction(&ledger.points, |p| p.int_h1_d1_grad_psi_sq),
        bounded: max_ratio.is_finite() && max_ratio <= ratio_cap,
        ratio_series,
    }
}
