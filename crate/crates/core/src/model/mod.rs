//! Physical operators, Hamiltonians and derived couplings.

mod dicke;
mod hamiltonians;
mod params;

pub use dicke::{collective_spin_ops, CollectiveOps};
pub use hamiltonians::{
    build_h_eff_s1, build_h_full_s1, build_h_s2, interaction_frame, pulse_hamiltonian, DrivenOperator,
    Frame, Hamiltonian,
};
pub use params::{SchemeOneParams, SchemeTwoParams, StarkShifts, ValidityCheck};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::hilbert::ops;

/// Qutrit level. The qubit lives in `{I, G}`; `E` is the excited level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    I,
    G,
    E,
}

impl Level {
    pub const ALL: [Level; 3] = [Level::I, Level::G, Level::E];

    /// Basis index inside a qutrit: `|i⟩ = 0`, `|g⟩ = 1`, `|e⟩ = 2`.
    pub const fn index(self) -> usize {
        match self {
            Level::I => 0,
            Level::G => 1,
            Level::E => 2,
        }
    }

    pub fn from_index(index: usize) -> Option<Level> {
        Level::ALL.get(index).copied()
    }

    pub fn symbol(self) -> char {
        match self {
            Level::I => 'i',
            Level::G => 'g',
            Level::E => 'e',
        }
    }
}

/// `σ^z = |e⟩⟨e| − |g⟩⟨g|` on a qutrit; zero on `|i⟩`.
pub fn sigma_z() -> DMatrix<Complex64> {
    ops::diagonal(&[0.0, -1.0, 1.0])
}

/// `σ⁺ = |e⟩⟨g|`.
pub fn sigma_plus() -> DMatrix<Complex64> {
    ops::transition(3, Level::E.index(), Level::G.index())
}

/// `σ⁻ = |g⟩⟨e|`.
pub fn sigma_minus() -> DMatrix<Complex64> {
    ops::transition(3, Level::G.index(), Level::E.index())
}

/// Standard subsystem labels used by the protocol builders.
pub mod labels {
    pub const SCQ: &str = "scq";
    pub const RES: &str = "res";
    pub const MODE1: &str = "mode1";
    pub const MODE2: &str = "mode2";
    pub const SCQ1: &str = "scq1";
    pub const SCQ2: &str = "scq2";

    /// Label of the `k`-th qutrit (1-based) in multi-qutrit registers.
    pub fn scq(k: usize) -> String {
        format!("scq{k}")
    }
}
