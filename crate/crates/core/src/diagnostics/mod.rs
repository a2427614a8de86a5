//! Norms, running functionals and identity audits over trajectories.

mod energy;
mod heat;
mod ledger;
mod norms;

pub use energy::{
    dissipation, energy, energy_identity_residual, energy_identity_residual_instant, energy_rate,
    energy_rhs_terms, full_tendency,
};
pub use heat::{a0, A0Report};
pub use ledger::{theorem_audit, write_row, DiagnosticsLedger, LedgerPoint, TheoremReport, CSV_HEADER};
pub use norms::{Diagnostics, NormSnapshot};
