//! Timing-error fidelity, fidelity sweep grids and the feasibility
//! calculator.

pub mod feasibility;
pub mod fidelity;
pub mod sweep;

pub use crate::protocol::TimingErrors;
pub use feasibility::{
    feasibility_report, feasibility_report_with, timing_budget_s1, FeasibilityInputs, FeasibilityReport,
    QuotedValue, TimingBudget,
};
pub use fidelity::{fidelity_closed_form, fidelity_simulated, fidelity_simulated_with};
pub use sweep::{sweep, Axis, EtaAxis, SweepGrid, SweepSpec};
