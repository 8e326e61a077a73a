use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{SchemeOneParams, SchemeTwoParams, StarkShifts, ValidityCheck};
use crate::protocol::cphase::gate_time_for_phase;
use crate::protocol::{PulseAngles, PulseRabi, KLM_GATE_PHASE};
use crate::units::{mhz_2pi, MICROSECOND, NANOSECOND};

/// Durations of the Scheme-1 steps in seconds.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TimingBudget {
    pub t0: f64,
    pub t1: f64,
    pub t2: f64,
    pub t3: f64,
    pub t5: f64,
    pub t6: f64,
    pub total: f64,
}

impl TimingBudget {
    pub fn with_final_pulses(mut self, t5: f64, t6: f64) -> Self {
        self.t5 = t5;
        self.t6 = t6;
        self.total = self.t0 + self.t1 + self.t2 + self.t3 + t5 + t6;
        self
    }
}

/// Step durations for the ideal angles with Steps 5 and 6 instantaneous.
pub fn timing_budget_s1(p: &SchemeOneParams, rabi: &PulseRabi) -> Result<TimingBudget> {
    if rabi.first == 0.0 || rabi.second == 0.0 {
        return Err(Error::invalid("pulse_rabi", "Rabi frequencies must be nonzero"));
    }
    let g = p.g_eff()?.abs();
    let a = PulseAngles::ideal();
    let t0 = a.theta0 / rabi.first.abs();
    let t1 = a.gt1 / g;
    let t2 = a.theta2 / rabi.second.abs();
    let t3 = a.gt3 / g;
    Ok(TimingBudget {
        t0,
        t1,
        t2,
        t3,
        t5: 0.0,
        t6: 0.0,
        total: t0 + t1 + t2 + t3,
    })
}

/// Assumptions that are not part of either parameter set.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FeasibilityInputs {
    /// Qutrit dephasing rate `γ` (rad/s).
    pub gamma_scq: f64,
    /// Molecular collision rate `γ_m` (rad/s).
    pub gamma_molecule: f64,
    /// `Ω′ = Ω″ = fraction · g`.
    pub rabi_fraction: f64,
    /// Upper bound quoted for the Scheme-1 preparation time.
    pub time_bound: f64,
    /// Duration of each single-qutrit pulse in Scheme 2; the two initial
    /// pulses and the final mixing pulse each take this long.
    pub s2_pulse_duration: f64,
    /// Register sizes for the `N`-qubit totals.
    pub max_qubits: usize,
}

impl Default for FeasibilityInputs {
    fn default() -> Self {
        Self {
            gamma_scq: mhz_2pi(0.032),
            gamma_molecule: mhz_2pi(700e-6),
            rabi_fraction: 0.1,
            time_bound: 29.0 * NANOSECOND,
            s2_pulse_duration: 4.0 * NANOSECOND,
            max_qubits: 5,
        }
    }
}

/// A published rounded number next to its recomputed value.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuotedValue {
    pub name: String,
    pub unit: &'static str,
    pub quoted: f64,
    pub computed: f64,
    pub relative_deviation: f64,
}

impl QuotedValue {
    fn new(name: &str, unit: &'static str, quoted: f64, computed: f64) -> Self {
        Self {
            name: name.to_string(),
            unit,
            quoted,
            computed,
            relative_deviation: (computed - quoted) / quoted,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CouplingChain {
    pub g_s: f64,
    pub g_m: f64,
    pub delta_s: f64,
    pub delta_m: f64,
    pub n_molecules: u64,
    pub shifts: StarkShifts,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Ratio {
    pub name: String,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QubitTotal {
    pub qubits: usize,
    pub total_time: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FeasibilityReport {
    pub inputs: FeasibilityInputs,
    pub coupling: CouplingChain,
    pub scheme_one_validity: Vec<ValidityCheck>,
    pub scheme_one_decoherence: Vec<Ratio>,
    pub timing: TimingBudget,
    pub timing_within_bound: bool,
    pub scheme_two_validity: Vec<ValidityCheck>,
    pub scheme_two_decoherence: Vec<Ratio>,
    pub gate_time: f64,
    /// Gate plus the initial and final pulses.
    pub stage_time: f64,
    pub n_qubit_totals: Vec<QubitTotal>,
    pub quoted: Vec<QuotedValue>,
    /// `"pass"` when every check passes, otherwise `"warn"`.
    pub status: &'static str,
}

pub fn feasibility_report(p1: &SchemeOneParams, p2: &SchemeTwoParams) -> Result<FeasibilityReport> {
    feasibility_report_with(p1, p2, &FeasibilityInputs::default())
}

pub fn feasibility_report_with(
    p1: &SchemeOneParams,
    p2: &SchemeTwoParams,
    inputs: &FeasibilityInputs,
) -> Result<FeasibilityReport> {
    let shifts = p1.stark_shifts()?;
    let g = shifts.g_eff.abs();
    let coupling = CouplingChain {
        g_s: p1.g_s,
        g_m: p1.g_m,
        delta_s: p1.delta_s(),
        delta_m: p1.delta_m(),
        n_molecules: p1.n_molecules,
        shifts,
    };
    let ratio = |name: &str, value: f64| Ratio {
        name: name.to_string(),
        value,
    };
    let scheme_one_decoherence = vec![
        ratio("gamma/g_eff", inputs.gamma_scq / g),
        ratio("gamma_m/g_eff", inputs.gamma_molecule / g),
    ];
    let timing = timing_budget_s1(p1, &PulseRabi::fraction_of(g, inputs.rabi_fraction))?;

    let scheme_two_decoherence = vec![
        ratio("kappa/g_1", (p2.kappa / p2.g_1).abs()),
        ratio("kappa/g_2", (p2.kappa / p2.g_2).abs()),
        ratio("gamma_1/g_1", (p2.gamma_1 / p2.g_1).abs()),
        ratio("gamma_2/g_2", (p2.gamma_2 / p2.g_2).abs()),
    ];
    let gate_time = gate_time_for_phase(KLM_GATE_PHASE, p2)?;
    let stage_time = gate_time + 2.0 * inputs.s2_pulse_duration;
    let n_qubit_totals = (2..=inputs.max_qubits.max(2))
        .map(|n| QubitTotal {
            qubits: n,
            total_time: (n - 1) as f64 * stage_time,
        })
        .collect();

    let quoted = vec![
        QuotedValue::new("g_eff", "2pi MHz", 250.0, shifts.g_eff / mhz_2pi(1.0)),
        QuotedValue::new("gate_time", "us", 0.666, gate_time / MICROSECOND),
        QuotedValue::new("two_qubit_total", "us", 0.674, stage_time / MICROSECOND),
        QuotedValue::new("scheme_one_total_bound", "ns", 29.0, timing.total / NANOSECOND),
    ];

    let scheme_one_validity = p1.validity();
    let scheme_two_validity = p2.validity();
    let timing_within_bound = timing.total < inputs.time_bound;
    let all_pass = timing_within_bound
        && scheme_one_validity.iter().all(|c| c.passed)
        && scheme_two_validity.iter().all(|c| c.passed);

    Ok(FeasibilityReport {
        inputs: inputs.clone(),
        coupling,
        scheme_one_validity,
        scheme_one_decoherence,
        timing,
        timing_within_bound,
        scheme_two_validity,
        scheme_two_decoherence,
        gate_time,
        stage_time,
        n_qubit_totals,
        quoted,
        status: if all_pass { "pass" } else { "warn" },
    })
}
