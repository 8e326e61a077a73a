use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use serde::Serialize;

use super::cphase::cphase_ideal;
use crate::error::{Error, Result};
use crate::evolve::qutrit_pulse;
use crate::hilbert::{tensor, SpaceLayout, StateVector, Subsystem};
use crate::model::{labels, Level};

/// Conditional phase used to grow the KLM register.
pub const KLM_GATE_PHASE: f64 = -1.5 * PI;

/// `|i⟩ → (|i⟩ + |g⟩)/√2`.
fn superpose(state: &StateVector, target: &str) -> Result<StateVector> {
    qutrit_pulse((Level::I, Level::G), FRAC_PI_4, -FRAC_PI_2, state.layout(), target)?.apply(state)
}

/// `|i⟩ → (|i⟩ − |g⟩)/√2`, `|g⟩ → (|i⟩ + |g⟩)/√2`.
fn mix(state: &StateVector, target: &str) -> Result<StateVector> {
    qutrit_pulse((Level::I, Level::G), FRAC_PI_4, FRAC_PI_2, state.layout(), target)?.apply(state)
}

/// One growth stage: qubit `qubits` joins a register of `qubits − 1`.
#[derive(Clone, Debug, Serialize)]
pub struct SchemeTwoStage {
    pub qubits: usize,
    /// Previous register with the new qutrit in `|i⟩`.
    pub input: StateVector,
    pub after_superposition: StateVector,
    pub after_gate: StateVector,
    pub output: StateVector,
}

/// Layout of an `n`-qutrit register labelled `scq1 … scqn`.
pub fn register_layout(n: usize) -> Result<SpaceLayout> {
    SpaceLayout::new((1..=n).map(|k| Subsystem::qutrit(labels::scq(k))).collect())
}

/// Builds the `n`-qubit register stage by stage using gate phase `phase`.
/// Qubit 1 starts in `(|i⟩ + |g⟩)/√2`; every later qubit starts in `|i⟩`, is
/// put into superposition, gated with its predecessor and mixed. Earlier
/// qubits are decoupled, so the gate touches only the last pair.
pub fn scheme2_trace(n: usize, phase: f64) -> Result<Vec<SchemeTwoStage>> {
    if n < 2 {
        return Err(Error::invalid("n", format!("a KLM register needs at least 2 qubits, got {n}")));
    }
    let first = StateVector::basis(register_layout(1)?, &[Level::I.index()])?;
    let mut register = superpose(&first, &labels::scq(1))?;
    let mut stages = Vec::with_capacity(n - 1);
    for k in 2..=n {
        let fresh = StateVector::basis(SpaceLayout::single(Subsystem::qutrit(labels::scq(k)))?, &[Level::I.index()])?;
        let input: StateVector = tensor([&register, &fresh])?;
        let new = labels::scq(k);
        let after_superposition = superpose(&input, &new)?;
        let gate = cphase_ideal(phase, input.layout(), &labels::scq(k - 1), &new)?;
        let after_gate = gate.apply(&after_superposition)?;
        let output = mix(&after_gate, &new)?;
        register = output.clone();
        stages.push(SchemeTwoStage {
            qubits: k,
            input,
            after_superposition,
            after_gate,
            output,
        });
    }
    Ok(stages)
}

/// `n`-qubit KLM state grown with the `−3π/2` gate.
pub fn scheme2_n_qubit(n: usize) -> Result<StateVector> {
    let stages = scheme2_trace(n, KLM_GATE_PHASE)?;
    Ok(stages.into_iter().last().expect("n >= 2 gives a stage").output)
}

/// Two-qubit KLM state.
pub fn scheme2_two_qubit() -> StateVector {
    scheme2_n_qubit(2).expect("two qubits is a valid register")
}
