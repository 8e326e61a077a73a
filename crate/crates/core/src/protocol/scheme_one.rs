use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, TAU};

use serde::{Deserialize, Serialize};

use super::measure::{apply_measurement, MeasurementChoice};
use super::program::{Engine, ProgramStep, PulseProgram, RunRecord, Step, StepRecord, TimingErrors};
use crate::error::{Error, Result};
use crate::evolve::{
    interaction_picture, jc_rotation, propagator, qutrit_pulse, step5_transfer, step6_hadamard, Propagator,
};
use crate::hilbert::{SpaceLayout, StateVector, Subsystem};
use crate::model::{build_h_eff_s1, interaction_frame, labels, pulse_hamiltonian, Level, SchemeOneParams};

/// Pulse areas and phases of Steps 1 and 3, plus the exchange areas
/// `g·t1`, `g·t3` of Steps 2 and 4.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PulseAngles {
    pub theta0: f64,
    pub theta2: f64,
    pub phi: f64,
    pub phi_prime: f64,
    #[serde(default = "half_pi")]
    pub gt1: f64,
    #[serde(default = "half_pi")]
    pub gt3: f64,
}

fn half_pi() -> f64 {
    FRAC_PI_2
}

impl Default for PulseAngles {
    /// The angles giving `α = β = γ = 1/√3`.
    fn default() -> Self {
        Self {
            theta0: (1.0 / 3f64.sqrt()).acos(),
            theta2: FRAC_PI_4,
            phi: 0.0,
            phi_prime: 0.0,
            gt1: FRAC_PI_2,
            gt3: FRAC_PI_2,
        }
    }
}

impl PulseAngles {
    pub fn ideal() -> Self {
        Self::default()
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("theta0", self.theta0),
            ("theta2", self.theta2),
            ("phi", self.phi),
            ("phi_prime", self.phi_prime),
            ("gt1", self.gt1),
            ("gt3", self.gt3),
        ] {
            if !(0.0..TAU).contains(&v) {
                return Err(Error::invalid("angles", format!("{name} = {v} outside [0, 2π)")));
            }
        }
        Ok(())
    }

    /// Ideal amplitudes `(α, β, γ)` of the post-Step-6 brackets.
    pub fn targets(&self) -> [num_complex::Complex64; 3] {
        amplitudes(self, &TimingErrors::zero())
    }
}

/// `(α, β, γ)` for the given angles after stretching each step by `1 + η`.
pub(crate) fn amplitudes(a: &PulseAngles, eta: &TimingErrors) -> [num_complex::Complex64; 3] {
    use num_complex::Complex64;
    let t0 = a.theta0 * (1.0 + eta.eta_0);
    let t1 = a.gt1 * (1.0 + eta.eta_1);
    let t2 = a.theta2 * (1.0 + eta.eta_2);
    let t3 = a.gt3 * (1.0 + eta.eta_3);
    let alpha = Complex64::new(t0.cos(), 0.0);
    let beta = Complex64::from_polar(t0.sin() * t1.sin() * t2.cos(), -a.phi);
    let gamma = Complex64::from_polar(t0.sin() * t1.sin() * t2.sin() * t3.sin(), -(a.phi + a.phi_prime));
    [alpha, beta, gamma]
}

/// Rabi frequencies `Ω′`, `Ω″` of the Step-1 and Step-3 pulses.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PulseRabi {
    pub first: f64,
    pub second: f64,
}

impl PulseRabi {
    /// `Ω′ = Ω″ = fraction · g`.
    pub fn fraction_of(g_eff: f64, fraction: f64) -> Self {
        Self {
            first: fraction * g_eff,
            second: fraction * g_eff,
        }
    }
}

/// Full configuration of a Scheme-1 run.
#[derive(Clone, Debug, PartialEq)]
pub struct SchemeOneRun {
    pub params: SchemeOneParams,
    pub angles: PulseAngles,
    pub etas: TimingErrors,
    pub engine: Engine,
    /// Defaults to `0.1·g`.
    pub pulse_rabi: Option<PulseRabi>,
    /// Durations of Steps 5 and 6; zero means instantaneous.
    pub final_pulse_durations: [f64; 2],
    pub mode_cutoff: usize,
    pub measurement: Option<MeasurementChoice>,
}

pub const DEFAULT_MODE_CUTOFF: usize = 3;
pub const DEFAULT_RABI_FRACTION: f64 = 0.1;

impl SchemeOneRun {
    pub fn new(params: SchemeOneParams) -> Self {
        Self {
            params,
            angles: PulseAngles::ideal(),
            etas: TimingErrors::zero(),
            engine: Engine::ClosedForm,
            pulse_rabi: None,
            final_pulse_durations: [0.0, 0.0],
            mode_cutoff: DEFAULT_MODE_CUTOFF,
            measurement: None,
        }
    }

    pub fn layout(&self) -> Result<SpaceLayout> {
        if self.mode_cutoff < 1 {
            return Err(Error::InvalidCutoff {
                cutoff: self.mode_cutoff,
                reason: "the protocol needs at least one excitation per mode",
            });
        }
        SpaceLayout::new(vec![
            Subsystem::qutrit(labels::SCQ),
            Subsystem::mode(labels::MODE1, self.mode_cutoff),
            Subsystem::mode(labels::MODE2, self.mode_cutoff),
        ])
    }

    pub fn initial_state(&self) -> Result<StateVector> {
        StateVector::basis(self.layout()?, &[Level::I.index(), 0, 0])
    }

    fn rabi(&self, g: f64) -> Result<PulseRabi> {
        let r = self.pulse_rabi.unwrap_or_else(|| PulseRabi::fraction_of(g, DEFAULT_RABI_FRACTION));
        if r.first == 0.0 || r.second == 0.0 || !r.first.is_finite() || !r.second.is_finite() {
            return Err(Error::invalid("pulse_rabi", "Rabi frequencies must be finite and nonzero"));
        }
        Ok(r)
    }

    /// Steps 1–6, then measurement and feedback if configured.
    pub fn program(&self) -> Result<PulseProgram> {
        self.angles.validate()?;
        let g = self.params.g_eff()?;
        let rabi = self.rabi(g)?;
        let a = &self.angles;
        let step = |label: &str, step: Step| ProgramStep {
            label: label.to_string(),
            step,
        };
        let mut steps = vec![
            step(
                "step1: pulse i-e",
                Step::Pulse {
                    pair: (Level::I, Level::E),
                    theta: a.theta0,
                    phase: a.phi,
                    duration: a.theta0 / rabi.first.abs(),
                    error_slot: Some(0),
                },
            ),
            step(
                "step2: exchange with ensemble 1",
                Step::Interact {
                    ensemble: 1,
                    duration: a.gt1 / g.abs(),
                    error_slot: Some(1),
                },
            ),
            step(
                "step3: pulse g-e",
                Step::Pulse {
                    pair: (Level::G, Level::E),
                    theta: a.theta2,
                    phase: a.phi_prime,
                    duration: a.theta2 / rabi.second.abs(),
                    error_slot: Some(2),
                },
            ),
            step(
                "step4: exchange with ensemble 2",
                Step::Interact {
                    ensemble: 2,
                    duration: a.gt3 / g.abs(),
                    error_slot: Some(3),
                },
            ),
            step(
                "step5: transfer i-e",
                Step::Transfer {
                    duration: self.final_pulse_durations[0],
                },
            ),
            step(
                "step6: pulse g-e",
                Step::Hadamard {
                    duration: self.final_pulse_durations[1],
                },
            ),
        ];
        if let Some(choice) = self.measurement {
            steps.push(step("measure scq", Step::Measure(choice)));
            steps.push(step("feedback mode1", Step::Feedback));
        }
        let program = PulseProgram {
            steps,
            timing_errors: self.etas,
        };
        program.validate()?;
        Ok(program)
    }

    pub fn run(&self) -> Result<RunRecord> {
        let program = self.program()?;
        execute(&program, &self.params, self.engine, &self.initial_state()?)
    }
}

/// Runs Steps 1–6 from `|i⟩|0⟩|0⟩` with default pulse Rabi frequencies and
/// mode cutoff.
pub fn scheme1_run(p: &SchemeOneParams, angles: &PulseAngles, etas: &TimingErrors, engine: Engine) -> Result<RunRecord> {
    SchemeOneRun {
        angles: *angles,
        etas: *etas,
        engine,
        ..SchemeOneRun::new(p.clone())
    }
    .run()
}

fn mode_label(ensemble: u8) -> &'static str {
    if ensemble == 1 {
        labels::MODE1
    } else {
        labels::MODE2
    }
}

/// Propagator of one unitary step. `duration` already includes the timing
/// error; for pulses the area scales with it.
fn step_propagator(
    step: &Step,
    duration: f64,
    eta: f64,
    p: &SchemeOneParams,
    engine: Engine,
    layout: &SpaceLayout,
) -> Result<Option<Propagator>> {
    let scq = labels::SCQ;
    let u = match (step.clone(), engine) {
        (Step::Pulse { pair, theta, phase, .. }, Engine::ClosedForm) => {
            qutrit_pulse(pair, theta * (1.0 + eta), phase, layout, scq)?
        }
        (
            Step::Pulse {
                pair,
                theta,
                phase,
                duration: nominal,
                ..
            },
            Engine::EffectiveNumeric,
        ) => numeric_pulse(pair, theta, phase, nominal, 1.0 + eta, layout)?,
        (Step::Interact { ensemble, .. }, Engine::ClosedForm) => {
            jc_rotation(p.g_eff()?, duration, layout, scq, mode_label(ensemble))?
        }
        (Step::Interact { ensemble, .. }, Engine::EffectiveNumeric) => {
            let mode = mode_label(ensemble);
            let h = build_h_eff_s1(p, layout, mode)?;
            let h0 = interaction_frame(p, layout, mode)?;
            interaction_picture(&h, &h0, duration)?
        }
        (Step::Transfer { .. }, Engine::ClosedForm) => step5_transfer(layout, scq)?,
        (Step::Transfer { .. }, Engine::EffectiveNumeric) => {
            numeric_pulse((Level::I, Level::E), FRAC_PI_2, -FRAC_PI_2, 0.0, 1.0, layout)?
        }
        (Step::Hadamard { .. }, Engine::ClosedForm) => step6_hadamard(layout, scq)?,
        (Step::Hadamard { .. }, Engine::EffectiveNumeric) => {
            numeric_pulse((Level::G, Level::E), FRAC_PI_4, FRAC_PI_2, 0.0, 1.0, layout)?
        }
        (Step::Decouple | Step::Measure(_) | Step::Feedback, _) => return Ok(None),
    };
    Ok(Some(u.with_duration(duration)))
}

/// Exponentiates the drive Hamiltonian. With a nominal duration the Rabi
/// frequency is `θ/t` and the pulse runs for `t·stretch`; otherwise a unit
/// Rabi frequency runs for `θ·stretch`.
fn numeric_pulse(
    pair: (Level, Level),
    theta: f64,
    phase: f64,
    nominal: f64,
    stretch: f64,
    layout: &SpaceLayout,
) -> Result<Propagator> {
    let (rabi, t) = if nominal > 0.0 {
        (theta / nominal, nominal * stretch)
    } else {
        (1.0, theta * stretch)
    };
    let h = pulse_hamiltonian(pair, rabi, phase, layout, labels::SCQ)?;
    propagator(&h, t)
}

/// Executes `program` from `initial`, recording the state after each step.
pub fn execute(program: &PulseProgram, p: &SchemeOneParams, engine: Engine, initial: &StateVector) -> Result<RunRecord> {
    program.validate()?;
    let layout = initial.layout().clone();
    let durations = program.durations();
    let mut state = initial.clone();
    let mut steps = Vec::with_capacity(program.steps.len());
    let mut outcome = None;

    for (s, &duration) in program.steps.iter().zip(&durations) {
        let eta = match s.step {
            Step::Pulse { error_slot, .. } | Step::Interact { error_slot, .. } => {
                error_slot.map_or(0.0, |k| program.timing_errors.get(k))
            }
            _ => 0.0,
        };
        match &s.step {
            Step::Measure(choice) => {
                let o = apply_measurement(&state, *choice)?;
                state = o.collapsed.clone();
                outcome = Some(o);
            }
            Step::Feedback => {
                let o = outcome.as_ref().expect("validated: feedback follows measurement");
                state = o.corrected.clone();
            }
            step => {
                if let Some(u) = step_propagator(step, duration, eta, p, engine, &layout)? {
                    state = u.apply(&state)?;
                }
            }
        }
        if !state.is_finite() {
            return Err(Error::NonFinite("scheme-1 state"));
        }
        steps.push(StepRecord {
            label: s.label.clone(),
            duration,
            state: state.clone(),
        });
    }

    Ok(RunRecord {
        initial: initial.clone(),
        total_time: durations.iter().sum(),
        steps,
        outcome: outcome.map(Into::into),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{c, overlap_fidelity};
    use num_complex::Complex64;

    fn params() -> SchemeOneParams {
        SchemeOneParams::reference_device()
    }

    fn amp(s: &StateVector, q: Level, n1: usize, n2: usize) -> Complex64 {
        s.amplitude(&[q.index(), n1, n2]).unwrap()
    }

    #[test]
    fn ideal_run_gives_six_equal_magnitudes() {
        let r = scheme1_run(&params(), &PulseAngles::ideal(), &TimingErrors::zero(), Engine::ClosedForm).unwrap();
        let s = r.final_state();
        let k = 1.0 / 6f64.sqrt();
        let expect = [
            (Level::G, 0, 0, k),
            (Level::G, 1, 0, -k),
            (Level::G, 1, 1, k),
            (Level::E, 0, 0, k),
            (Level::E, 1, 0, k),
            (Level::E, 1, 1, -k),
        ];
        let mut target = StateVector::zeros(s.layout().clone());
        for (q, n1, n2, v) in expect {
            let idx = s.layout().encode(&[q.index(), n1, n2]).unwrap();
            target.amplitudes_mut()[idx] = c(v);
            assert!((amp(s, q, n1, n2) - c(v)).norm() < 1e-12);
        }
        assert!((overlap_fidelity(s, &target).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(r.steps.len(), 6);
    }

    #[test]
    fn no_excitation_when_first_pulse_is_off() {
        let angles = PulseAngles {
            theta0: 0.0,
            ..PulseAngles::ideal()
        };
        let r = scheme1_run(&params(), &angles, &TimingErrors::zero(), Engine::ClosedForm).unwrap();
        let s = r.final_state();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((amp(s, Level::G, 0, 0) - c(h)).norm() < 1e-12);
        assert!((amp(s, Level::E, 0, 0) - c(h)).norm() < 1e-12);
    }

    #[test]
    fn stretched_exchange_matches_substitution() {
        let etas = TimingErrors {
            eta_1: 0.1,
            ..TimingErrors::zero()
        };
        let a = PulseAngles::ideal();
        let r = scheme1_run(&params(), &a, &etas, Engine::ClosedForm).unwrap();
        let s = &r.steps[3].state;
        let [alpha, beta, gamma] = amplitudes(&a, &etas);
        assert!((amp(s, Level::I, 0, 0) - alpha).norm() < 1e-12);
        assert!((amp(s, Level::G, 1, 0) + beta).norm() < 1e-12);
        assert!((amp(s, Level::G, 1, 1) - gamma).norm() < 1e-12);
        // The unfinished exchange leaves weight on |e,0,0⟩ before Step 3.
        let early = &r.steps[1].state;
        assert!((amp(early, Level::E, 0, 0).norm() - a.theta0.sin() * (a.gt1 * 1.1).cos().abs()).abs() < 1e-12);
        let s1 = (a.gt1 * 1.1).sin();
        assert!((beta.norm() - a.theta0.sin() * s1 * a.theta2.cos()).abs() < 1e-15);
    }

    #[test]
    fn engines_agree() {
        let run = |engine| {
            SchemeOneRun {
                angles: PulseAngles {
                    theta0: 0.7,
                    theta2: 1.1,
                    phi: 0.3,
                    phi_prime: 2.0,
                    gt1: 1.4,
                    gt3: 1.7,
                },
                etas: TimingErrors {
                    eta_0: 0.05,
                    eta_1: -0.1,
                    eta_2: 0.2,
                    eta_3: 0.07,
                },
                engine,
                ..SchemeOneRun::new(params())
            }
            .run()
            .unwrap()
        };
        let a = run(Engine::ClosedForm);
        let b = run(Engine::EffectiveNumeric);
        for (x, y) in a.states().zip(b.states()) {
            assert!(1.0 - overlap_fidelity(x, y).unwrap() < 1e-8);
        }
        assert_eq!(a.durations(), b.durations());
    }

    #[test]
    fn total_time_is_sum_of_durations() {
        let r = scheme1_run(&params(), &PulseAngles::ideal(), &TimingErrors::uniform(0.1), Engine::ClosedForm).unwrap();
        let sum: f64 = r.durations().iter().sum();
        assert_eq!(r.total_time, sum);
        assert!(r.states().all(|s| s.is_normalized()));
    }

    #[test]
    fn angle_range_is_enforced() {
        let angles = PulseAngles {
            phi: TAU,
            ..PulseAngles::ideal()
        };
        assert!(scheme1_run(&params(), &angles, &TimingErrors::zero(), Engine::ClosedForm).is_err());
        let angles = PulseAngles {
            theta2: -0.1,
            ..PulseAngles::ideal()
        };
        assert!(scheme1_run(&params(), &angles, &TimingErrors::zero(), Engine::ClosedForm).is_err());
    }

    #[test]
    fn measured_run_records_outcome() {
        let r = SchemeOneRun {
            measurement: Some(MeasurementChoice::Fixed(Level::E)),
            ..SchemeOneRun::new(params())
        }
        .run()
        .unwrap();
        assert_eq!(r.steps.len(), 8);
        let o = r.outcome.as_ref().unwrap();
        assert_eq!(o.outcome, Level::E);
        assert!((o.probability - 0.5).abs() < 1e-12);
        assert_eq!(r.pre_measurement_state(), &r.steps[5].state);
    }
}
