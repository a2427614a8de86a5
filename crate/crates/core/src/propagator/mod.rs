//! Exact per-mode solution operator of the linearized system.

mod audit;
mod multipliers;
mod table;

pub use audit::{
    bounds_audit, m11_pointwise_bound, pointwise_sweep, xi1_m12_pointwise_bound, AuditDomain, AuditRow,
    BoundsReport, XiLattice, MIXED_M11, MIXED_M12, SUP_M11, SUP_XI1_M12,
};
pub use multipliers::{eigenvalues, multipliers, ModeEigen, ModeMultipliers, Regime};
pub use table::{apply_homogeneous, PropagatorTable};
