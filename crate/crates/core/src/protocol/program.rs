use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::StateVector;
use crate::model::Level;

use super::measure::{MeasurementChoice, MeasurementOutcome};

/// Relative duration errors `η_j = Δt_j / t_j` of the four timed steps.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct TimingErrors {
    pub eta_0: f64,
    pub eta_1: f64,
    pub eta_2: f64,
    pub eta_3: f64,
}

impl TimingErrors {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn uniform(eta: f64) -> Self {
        Self {
            eta_0: eta,
            eta_1: eta,
            eta_2: eta,
            eta_3: eta,
        }
    }

    pub fn get(&self, slot: usize) -> f64 {
        match slot {
            0 => self.eta_0,
            1 => self.eta_1,
            2 => self.eta_2,
            3 => self.eta_3,
            _ => panic!("timing error slot {slot} out of range"),
        }
    }

    pub fn set(&mut self, slot: usize, value: f64) {
        match slot {
            0 => self.eta_0 = value,
            1 => self.eta_1 = value,
            2 => self.eta_2 = value,
            3 => self.eta_3 = value,
            _ => panic!("timing error slot {slot} out of range"),
        }
    }

    /// Every `η > −1`, so perturbed durations stay positive.
    pub fn validate(&self) -> Result<()> {
        for slot in 0..4 {
            let eta = self.get(slot);
            if !eta.is_finite() || eta <= -1.0 {
                return Err(Error::invalid("eta", format!("eta_{slot} = {eta} must be finite and > -1")));
            }
        }
        Ok(())
    }
}

/// Which propagator family executes the program.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Engine {
    /// Closed-form rotations: [`crate::evolve::qutrit_pulse`] and
    /// [`crate::evolve::jc_rotation`].
    ClosedForm,
    /// Dense exponentials of the drive Hamiltonian and the reduced
    /// exchange Hamiltonian, the latter viewed in its interaction frame.
    EffectiveNumeric,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Step {
    /// Pulse of area `theta` on the qutrit transition `pair`.
    Pulse {
        pair: (Level, Level),
        theta: f64,
        phase: f64,
        duration: f64,
        error_slot: Option<usize>,
    },
    /// Literal `|i⟩ → |e⟩` transfer.
    Transfer { duration: f64 },
    /// `|g⟩ → (|g⟩ − |e⟩)/√2`, `|e⟩ → (|e⟩ + |g⟩)/√2`.
    Hadamard { duration: f64 },
    /// Resonant exchange with ensemble 1 or 2 for `duration`.
    Interact {
        ensemble: u8,
        duration: f64,
        error_slot: Option<usize>,
    },
    /// Qutrit detuned from everything; an ideal switch with no evolution.
    Decouple,
    Measure(MeasurementChoice),
    /// Parity flip on mode 1 when the measurement returned `|e⟩`.
    Feedback,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProgramStep {
    pub label: String,
    pub step: Step,
}

/// Declarative step sequence plus the timing errors applied to it.
#[derive(Clone, Debug, PartialEq)]
pub struct PulseProgram {
    pub steps: Vec<ProgramStep>,
    pub timing_errors: TimingErrors,
}

impl PulseProgram {
    pub fn validate(&self) -> Result<()> {
        self.timing_errors.validate()?;
        let mut measured = false;
        for s in &self.steps {
            match &s.step {
                Step::Interact { ensemble, .. } if !matches!(ensemble, 1 | 2) => {
                    return Err(Error::invalid("ensemble", format!("`{}` targets ensemble {ensemble}", s.label)));
                }
                Step::Measure(_) if measured => {
                    return Err(Error::invalid("measure", "a program measures at most once"));
                }
                Step::Measure(_) => measured = true,
                Step::Feedback if !measured => {
                    return Err(Error::invalid("feedback", "feedback must follow a measurement"));
                }
                Step::Pulse { pair, .. } if pair.0 == pair.1 => {
                    return Err(Error::invalid("pair", format!("`{}` pulses a level onto itself", s.label)));
                }
                _ => {}
            }
        }
        Ok(())
    }

    /// Duration of each step after timing errors.
    pub fn durations(&self) -> Vec<f64> {
        self.steps
            .iter()
            .map(|s| match s.step {
                Step::Pulse {
                    duration, error_slot, ..
                }
                | Step::Interact {
                    duration, error_slot, ..
                } => duration * (1.0 + error_slot.map_or(0.0, |k| self.timing_errors.get(k))),
                Step::Transfer { duration } | Step::Hadamard { duration } => duration,
                Step::Decouple | Step::Measure(_) | Step::Feedback => 0.0,
            })
            .collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StepRecord {
    pub label: String,
    pub duration: f64,
    pub state: StateVector,
}

/// Per-step trace of a program run.
#[derive(Clone, Debug, Serialize)]
pub struct RunRecord {
    pub initial: StateVector,
    pub steps: Vec<StepRecord>,
    pub outcome: Option<MeasurementOutcome>,
    pub total_time: f64,
}

impl RunRecord {
    pub fn final_state(&self) -> &StateVector {
        self.steps.last().map_or(&self.initial, |s| &s.state)
    }

    pub fn states(&self) -> impl Iterator<Item = &StateVector> {
        self.steps.iter().map(|s| &s.state)
    }

    pub fn durations(&self) -> Vec<f64> {
        self.steps.iter().map(|s| s.duration).collect()
    }

    /// The state just before the measurement, or the final state if the
    /// program does not measure.
    pub fn pre_measurement_state(&self) -> &StateVector {
        let mut last = &self.initial;
        for s in &self.steps {
            if s.label.starts_with("measure") {
                break;
            }
            last = &s.state;
        }
        last
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eta_bounds() {
        assert!(TimingErrors::uniform(0.1).validate().is_ok());
        let mut bad = TimingErrors::zero();
        bad.set(2, -1.0);
        assert!(bad.validate().is_err());
        bad.set(2, f64::NAN);
        assert!(bad.validate().is_err());
    }

    fn step(label: &str, step: Step) -> ProgramStep {
        ProgramStep {
            label: label.into(),
            step,
        }
    }

    #[test]
    fn program_invariants() {
        let measure = || Step::Measure(MeasurementChoice::Fixed(Level::G));
        let ok = PulseProgram {
            steps: vec![step("measure", measure()), step("feedback", Step::Feedback)],
            timing_errors: TimingErrors::zero(),
        };
        assert!(ok.validate().is_ok());

        let twice = PulseProgram {
            steps: vec![step("m1", measure()), step("m2", measure())],
            timing_errors: TimingErrors::zero(),
        };
        assert!(twice.validate().is_err());

        let early = PulseProgram {
            steps: vec![step("fb", Step::Feedback)],
            timing_errors: TimingErrors::zero(),
        };
        assert!(early.validate().is_err());

        let third = PulseProgram {
            steps: vec![step(
                "x",
                Step::Interact {
                    ensemble: 3,
                    duration: 1.0,
                    error_slot: None,
                },
            )],
            timing_errors: TimingErrors::zero(),
        };
        assert!(third.validate().is_err());
    }

    #[test]
    fn durations_carry_errors() {
        let p = PulseProgram {
            steps: vec![
                step(
                    "a",
                    Step::Interact {
                        ensemble: 1,
                        duration: 2.0,
                        error_slot: Some(1),
                    },
                ),
                step("b", Step::Transfer { duration: 0.5 }),
                step("c", Step::Decouple),
            ],
            timing_errors: TimingErrors {
                eta_1: 0.25,
                ..TimingErrors::zero()
            },
        };
        assert_eq!(p.durations(), vec![2.5, 0.5, 0.0]);
    }
}
