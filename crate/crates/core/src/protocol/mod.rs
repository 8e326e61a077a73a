//! End-to-end preparation protocols.
//!
//! * [`scheme_one`]: a qutrit writes a KLM state into two ensemble modes via
//!   pulses and resonant exchange, then is measured; a conditional parity
//!   flip on mode 1 makes both outcomes yield the same state.
//! * [`scheme_two`]: a tunable conditional-phase gate between qutrits,
//!   iterated qubit by qubit.

pub mod cphase;
pub mod klm;
pub mod measure;
pub mod program;
pub mod scheme_one;
pub mod scheme_two;

pub use cphase::{cphase_ideal, cphase_numeric, gate_time_for_phase, BranchPhases, GateReport};
pub use klm::{compare_klm, klm_closed_form, KlmComparison};
pub use measure::{scheme1_measure_feedback, MeasurementChoice, MeasurementOutcome};
pub use program::{Engine, ProgramStep, PulseProgram, RunRecord, Step, StepRecord, TimingErrors};
pub use scheme_one::{scheme1_run, PulseAngles, PulseRabi, SchemeOneRun};
pub use scheme_two::{scheme2_n_qubit, scheme2_trace, scheme2_two_qubit, SchemeTwoStage, KLM_GATE_PHASE};
