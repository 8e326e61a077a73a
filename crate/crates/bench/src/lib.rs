//! Fixtures shared by the benchmarks in `benches/`.

use klm_core::model::{build_h_eff_s1, build_h_s2, labels};
use klm_core::protocol::cphase::gate_layout;
use klm_core::{DenseOperator, Result, SchemeOneParams, SchemeTwoParams, SpaceLayout, Subsystem};

/// Qutrit plus one ensemble mode holding up to `cutoff` excitations.
pub fn exchange_layout(cutoff: usize) -> Result<SpaceLayout> {
    SpaceLayout::new(vec![Subsystem::qutrit(labels::SCQ), Subsystem::mode(labels::MODE1, cutoff)])
}

/// Reduced exchange Hamiltonian of the reference device.
pub fn reference_exchange(cutoff: usize) -> Result<DenseOperator> {
    build_h_eff_s1(&SchemeOneParams::reference_device(), &exchange_layout(cutoff)?, labels::MODE1)
}

/// Non-Hermitian gate Hamiltonian of the reference device.
pub fn reference_gate(cutoff: usize) -> Result<DenseOperator> {
    build_h_s2(&SchemeTwoParams::reference_device(), &gate_layout(cutoff)?)
}
