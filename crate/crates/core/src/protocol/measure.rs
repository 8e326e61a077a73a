use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{embed, ops, SpaceLayout, StateVector};
use crate::model::{labels, Level};

/// Largest `|i⟩` population tolerated in a state handed to the measurement.
const I_LEVEL_TOLERANCE: f64 = 1e-9;
const MIN_PROBABILITY: f64 = 1e-14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MeasurementChoice {
    /// Post-select a given outcome (`g` or `e`).
    Fixed(Level),
    /// Draw the outcome by the Born rule from a ChaCha8 stream seeded here.
    Sample { seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MeasurementOutcome {
    pub outcome: Level,
    pub probability: f64,
    pub p_g: f64,
    pub p_e: f64,
    /// Normalized two-mode state after feedback, qutrit traced out.
    pub klm_state: StateVector,
}

/// Full-layout states around the measurement, used by the step executor.
#[derive(Clone, Debug)]
pub(crate) struct Measured {
    pub collapsed: StateVector,
    pub corrected: StateVector,
    pub public: MeasurementOutcome,
}

impl From<Measured> for MeasurementOutcome {
    fn from(m: Measured) -> Self {
        m.public
    }
}

pub(crate) fn apply_measurement(state: &StateVector, choice: MeasurementChoice) -> Result<Measured> {
    let layout = state.layout();
    let pos = layout.position(labels::SCQ)?;
    if layout.subsystems()[pos].dim != 3 {
        return Err(Error::ProtocolViolation("measured subsystem is not a qutrit".into()));
    }
    let p_i = state.population(labels::SCQ, Level::I.index())?;
    if p_i > I_LEVEL_TOLERANCE {
        return Err(Error::ProtocolViolation(format!(
            "qutrit holds |i⟩ population {p_i:.3e}; expected a post-Step-6 state"
        )));
    }
    let p_g = state.population(labels::SCQ, Level::G.index())?;
    let p_e = state.population(labels::SCQ, Level::E.index())?;
    let outcome = match choice {
        MeasurementChoice::Fixed(Level::I) => {
            return Err(Error::invalid("outcome", "measurement outcomes are g or e"));
        }
        MeasurementChoice::Fixed(level) => level,
        MeasurementChoice::Sample { seed } => {
            let r: f64 = ChaCha8Rng::seed_from_u64(seed).random();
            if r * (p_g + p_e) < p_g {
                Level::G
            } else {
                Level::E
            }
        }
    };
    let probability = if outcome == Level::G { p_g } else { p_e };
    if probability < MIN_PROBABILITY {
        return Err(Error::ProtocolViolation(format!(
            "outcome {} has vanishing probability {probability:.3e}",
            outcome.symbol()
        )));
    }

    let mut collapsed = state.clone();
    for (idx, z) in collapsed.amplitudes_mut().iter_mut().enumerate() {
        if layout.decode(idx)[pos] != outcome.index() {
            *z = num_complex::Complex64::new(0.0, 0.0);
        }
    }
    collapsed.normalize()?;

    let corrected = if outcome == Level::E {
        let dim = layout.subsystem(labels::MODE1)?.dim;
        collapsed.apply(&embed(&ops::parity(dim), labels::MODE1, layout)?)?
    } else {
        collapsed.clone()
    };

    let klm_state = trace_out_level(&corrected, pos, outcome.index())?;
    Ok(Measured {
        collapsed,
        corrected: corrected.clone(),
        public: MeasurementOutcome {
            outcome,
            probability,
            p_g,
            p_e,
            klm_state,
        },
    })
}

/// Drops subsystem `pos` from a state known to sit in its level `level`.
fn trace_out_level(state: &StateVector, pos: usize, level: usize) -> Result<StateVector> {
    let layout = state.layout();
    let rest: Vec<_> = layout
        .subsystems()
        .iter()
        .enumerate()
        .filter(|(k, _)| *k != pos)
        .map(|(_, s)| s.clone())
        .collect();
    let reduced = SpaceLayout::new(rest)?;
    let mut out = StateVector::zeros(reduced.clone());
    for (idx, z) in state.amplitudes().iter().enumerate() {
        let mut digits = layout.decode(idx);
        if digits[pos] != level {
            continue;
        }
        digits.remove(pos);
        out.amplitudes_mut()[reduced.encode(&digits)?] = *z;
    }
    Ok(out)
}

/// Measures the qutrit of a post-Step-6 state in `{|g⟩, |e⟩}` and, on
/// outcome `e`, applies the parity flip on mode 1. Either outcome leaves the
/// modes in the same state up to a global phase.
pub fn scheme1_measure_feedback(state: &StateVector, choice: MeasurementChoice) -> Result<MeasurementOutcome> {
    apply_measurement(state, choice).map(Into::into)
}
