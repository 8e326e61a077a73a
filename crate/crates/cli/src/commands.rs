use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use klm_core::analysis::{feasibility_report_with, fidelity_closed_form, sweep, FeasibilityReport};
use klm_core::model::ValidityCheck;
use klm_core::protocol::{
    cphase_numeric, gate_time_for_phase, klm_closed_form, scheme1_measure_feedback, scheme1_run, scheme2_trace,
    GateReport, MeasurementOutcome,
};
use klm_core::{overlap_fidelity, Engine, Error, Level, PulseAngles, StateVector, SubsystemKind, TimingErrors};

use crate::config::{EngineName, ReportConfig, SchemeOneConfig, SchemeTwoConfig, Source, SweepConfig};
use crate::error::{CliError, CliResult};

/// Amplitudes below this are left out of the readable listings.
const LISTING_CUTOFF: f64 = 1e-12;

#[derive(Serialize)]
pub struct Amplitude {
    pub basis: String,
    pub amplitude: [f64; 2],
    pub magnitude: f64,
}

/// Nonzero amplitudes labelled like `|g,1,0>`.
pub fn listing(state: &StateVector) -> Vec<Amplitude> {
    let layout = state.layout();
    state
        .amplitudes()
        .iter()
        .enumerate()
        .filter(|(_, z)| z.norm() > LISTING_CUTOFF)
        .map(|(k, z)| {
            let digits = layout.decode(k);
            let parts: Vec<String> = digits
                .iter()
                .zip(layout.subsystems())
                .map(|(&d, s)| match (s.kind, Level::from_index(d)) {
                    (SubsystemKind::Qutrit, Some(l)) => l.symbol().to_string(),
                    _ => d.to_string(),
                })
                .collect();
            Amplitude {
                basis: format!("|{}>", parts.join(",")),
                amplitude: [z.re, z.im],
                magnitude: z.norm(),
            }
        })
        .collect()
}

fn finite_state(what: &str, s: &StateVector) -> CliResult<()> {
    if s.is_finite() {
        Ok(())
    } else {
        Err(CliError::Numerical(format!("{what} contains NaN or infinite amplitudes")))
    }
}

fn finite(what: &str, x: f64) -> CliResult<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(CliError::Numerical(format!("{what} is {x}")))
    }
}

/// Writes to `out`, or standard output when absent.
pub fn emit(out: Option<&Path>, text: &str) -> CliResult<()> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::Config(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::Config(format!("cannot write to stdout: {e}")))
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> CliResult<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| CliError::Numerical(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

#[derive(Serialize)]
struct StepEntry<'a> {
    label: &'a str,
    duration: f64,
    state: &'a StateVector,
}

#[derive(Serialize)]
#[serde(rename_all = "snake_case")]
enum MeasurementReport {
    Skipped { reason: String },
    Performed {
        #[serde(flatten)]
        outcome: MeasurementOutcome,
        klm_amplitudes: Vec<Amplitude>,
    },
}

#[derive(Serialize)]
struct SchemeOneReport<'a> {
    command: &'static str,
    config_sha256: String,
    config: &'a SchemeOneConfig,
    initial: &'a StateVector,
    steps: Vec<StepEntry<'a>>,
    total_time: f64,
    final_amplitudes: Vec<Amplitude>,
    /// Overlap of the final state with the error-free run at ideal angles.
    fidelity_vs_ideal: f64,
    fidelity_closed_form: f64,
    measurement: Option<MeasurementReport>,
    validity: Vec<ValidityCheck>,
}

pub fn scheme1(src: &Source, config: &SchemeOneConfig) -> CliResult<String> {
    let record = config.run_spec().run()?;
    for s in &record.steps {
        finite_state(&s.label, &s.state)?;
    }
    let last = record.final_state();
    let ideal = scheme1_run(&config.params, &PulseAngles::ideal(), &TimingErrors::zero(), Engine::ClosedForm)?;
    let fidelity_vs_ideal = finite("fidelity_vs_ideal", overlap_fidelity(ideal.final_state(), last)?)?;
    let fidelity_closed_form = finite("fidelity_closed_form", fidelity_closed_form(&config.etas, &config.angles))?;

    let measurement = match config.measurement_choice() {
        None => None,
        Some(choice) => Some(match scheme1_measure_feedback(last, choice) {
            Ok(outcome) => {
                finite_state("klm_state", &outcome.klm_state)?;
                MeasurementReport::Performed {
                    klm_amplitudes: listing(&outcome.klm_state),
                    outcome,
                }
            }
            // Timing errors leave population in |i⟩ or make an outcome
            // impossible; the prepared state is still reported.
            Err(e @ (Error::ProtocolViolation(_) | Error::InvalidArgument { .. })) => MeasurementReport::Skipped {
                reason: e.to_string(),
            },
            Err(e) => return Err(e.into()),
        }),
    };

    let report = SchemeOneReport {
        command: "scheme1",
        config_sha256: src.sha256(),
        config,
        initial: &record.initial,
        steps: record
            .steps
            .iter()
            .map(|s| StepEntry {
                label: &s.label,
                duration: s.duration,
                state: &s.state,
            })
            .collect(),
        total_time: record.total_time,
        final_amplitudes: listing(last),
        fidelity_vs_ideal,
        fidelity_closed_form,
        measurement,
        validity: config.params.validity(),
    };
    to_json(&report)
}

#[derive(Serialize)]
struct SweepSidecar<'a> {
    command: &'static str,
    config_sha256: String,
    csv_sha256: String,
    config: &'a SweepConfig,
    shape: [usize; 2],
    corners: [klm_core::analysis::sweep::Corner; 4],
}

/// Returns the CSV and its sidecar JSON.
pub fn sweep_csv(src: &Source, config: &SweepConfig) -> CliResult<(String, String)> {
    let grid = sweep(&config.grid)?;
    if let Some(x) = grid.results.iter().find(|x| !x.is_finite()) {
        return Err(CliError::Numerical(format!("fidelity evaluated to {x}")));
    }
    let csv = grid.to_csv();
    let (n1, n2) = grid.shape();
    let sidecar = SweepSidecar {
        command: "sweep",
        config_sha256: src.sha256(),
        csv_sha256: hex::encode(Sha256::digest(csv.as_bytes())),
        config,
        shape: [n1, n2],
        corners: grid.corners(),
    };
    Ok((csv, to_json(&sidecar)?))
}

/// `grid.csv` → `grid.meta.json`.
pub fn sidecar_path(out: &Path) -> PathBuf {
    out.with_extension("meta.json")
}

#[derive(Serialize)]
struct ClosedFormComparison {
    overlap: f64,
    closed_form_norm: f64,
    closed_form: Vec<Amplitude>,
}

#[derive(Serialize)]
struct SchemeTwoReport<'a> {
    command: &'static str,
    config_sha256: String,
    config: &'a SchemeTwoConfig,
    gate_time: f64,
    /// Gate plus the superposing and mixing pulses.
    stage_time: f64,
    total_time: f64,
    /// Conditional phase used in the register recursion.
    applied_phase: f64,
    numeric_gate: Option<GateReport>,
    final_state: &'a StateVector,
    final_amplitudes: Vec<Amplitude>,
    closed_form: ClosedFormComparison,
    validity: Vec<ValidityCheck>,
}

pub fn scheme2(src: &Source, config: &SchemeTwoConfig) -> CliResult<String> {
    let p = &config.params;
    let gate_time = gate_time_for_phase(config.phase, p)?;
    let numeric_gate = match config.engine {
        EngineName::NumericGate => Some(cphase_numeric(p, gate_time, config.resonator_cutoff)?),
        _ => None,
    };
    let applied_phase = match &numeric_gate {
        Some(r) => finite("entangling_phase", r.entangling_phase)?,
        None => config.phase,
    };
    let stages = scheme2_trace(config.n, applied_phase)?;
    let output = &stages.last().expect("n >= 2 gives a stage").output;
    finite_state("final state", output)?;

    let closed = klm_closed_form(config.n)?;
    let norm_sqr = closed.norm_sqr();
    let overlap = finite("overlap", overlap_fidelity(&closed, output)? / norm_sqr)?;
    let stage_time = gate_time + 2.0 * config.pulse_duration;

    let report = SchemeTwoReport {
        command: "scheme2",
        config_sha256: src.sha256(),
        config,
        gate_time,
        stage_time,
        total_time: (config.n - 1) as f64 * stage_time,
        applied_phase,
        numeric_gate,
        final_state: output,
        final_amplitudes: listing(output),
        closed_form: ClosedFormComparison {
            overlap,
            closed_form_norm: norm_sqr.sqrt(),
            closed_form: listing(&closed),
        },
        validity: p.validity(),
    };
    to_json(&report)
}

#[derive(Serialize)]
struct FeasibilityOutput<'a> {
    command: &'static str,
    config_sha256: String,
    config: &'a ReportConfig,
    report: FeasibilityReport,
}

pub fn report(src: &Source, config: &ReportConfig) -> CliResult<String> {
    let report = feasibility_report_with(&config.scheme_one, &config.scheme_two, &config.inputs)?;
    to_json(&FeasibilityOutput {
        command: "report",
        config_sha256: src.sha256(),
        config,
        report,
    })
}
