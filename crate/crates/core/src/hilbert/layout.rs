use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SubsystemKind {
    /// Three-level system, always dimension 3.
    Qutrit,
    /// Two-level system.
    Qubit,
    /// Truncated bosonic mode or Dicke ladder, dimension `cutoff + 1`.
    Mode,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Subsystem {
    pub label: String,
    pub dim: usize,
    pub kind: SubsystemKind,
}

impl Subsystem {
    pub fn qutrit(label: impl Into<String>) -> Self {
        Self {
            label: label.into(),
            dim: 3,
            kind: SubsystemKind::Qutrit,
        }
    }

    pub fn qubit(label: impl Into<String>) -> Self {
        Self {
            label: label.into(),
            dim: 2,
            kind: SubsystemKind::Qubit,
        }
    }

    /// A mode holding at most `cutoff` excitations.
    pub fn mode(label: impl Into<String>, cutoff: usize) -> Self {
        Self {
            label: label.into(),
            dim: cutoff + 1,
            kind: SubsystemKind::Mode,
        }
    }

    fn validate(&self) -> Result<()> {
        let bad = |reason| Error::InvalidDimension {
            label: self.label.clone(),
            dim: self.dim,
            reason,
        };
        match self.kind {
            SubsystemKind::Qutrit if self.dim != 3 => Err(bad("qutrits have dimension 3")),
            SubsystemKind::Qubit | SubsystemKind::Mode if self.dim < 2 => {
                Err(bad("dimension must be at least 2"))
            }
            _ => Ok(()),
        }
    }
}

/// Ordered list of subsystems spanning a composite Hilbert space.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct SpaceLayout {
    subsystems: Vec<Subsystem>,
}

impl SpaceLayout {
    pub fn new(subsystems: Vec<Subsystem>) -> Result<Self> {
        if subsystems.is_empty() {
            return Err(Error::EmptyFactors);
        }
        for (i, s) in subsystems.iter().enumerate() {
            s.validate()?;
            if subsystems[..i].iter().any(|p| p.label == s.label) {
                return Err(Error::DuplicateLabel(s.label.clone()));
            }
        }
        Ok(Self { subsystems })
    }

    pub fn single(subsystem: Subsystem) -> Result<Self> {
        Self::new(vec![subsystem])
    }

    pub fn subsystems(&self) -> &[Subsystem] {
        &self.subsystems
    }

    pub fn len(&self) -> usize {
        self.subsystems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subsystems.is_empty()
    }

    /// Total dimension: product of all subsystem dimensions.
    pub fn dim(&self) -> usize {
        self.subsystems.iter().map(|s| s.dim).product()
    }

    pub fn position(&self, label: &str) -> Result<usize> {
        self.subsystems
            .iter()
            .position(|s| s.label == label)
            .ok_or_else(|| Error::UnknownSubsystem(label.to_owned()))
    }

    pub fn subsystem(&self, label: &str) -> Result<&Subsystem> {
        Ok(&self.subsystems[self.position(label)?])
    }

    /// Product of the dimensions of all subsystems after `position`.
    pub fn stride(&self, position: usize) -> usize {
        self.subsystems[position + 1..].iter().map(|s| s.dim).product()
    }

    /// Mixed-radix index of a product basis state, one digit per subsystem.
    pub fn encode(&self, digits: &[usize]) -> Result<usize> {
        if digits.len() != self.subsystems.len() {
            return Err(Error::DimensionMismatch {
                expected: self.subsystems.len(),
                found: digits.len(),
            });
        }
        let mut index = 0;
        for (d, s) in digits.iter().zip(&self.subsystems) {
            if *d >= s.dim {
                return Err(Error::DimensionMismatch {
                    expected: s.dim,
                    found: *d,
                });
            }
            index = index * s.dim + d;
        }
        Ok(index)
    }

    pub fn decode(&self, mut index: usize) -> Vec<usize> {
        let mut digits = vec![0; self.subsystems.len()];
        for (slot, s) in digits.iter_mut().zip(&self.subsystems).rev() {
            *slot = index % s.dim;
            index /= s.dim;
        }
        digits
    }

    /// Layout of `self` followed by `other`.
    pub fn concat(&self, other: &SpaceLayout) -> Result<SpaceLayout> {
        let mut subsystems = self.subsystems.clone();
        subsystems.extend(other.subsystems.iter().cloned());
        SpaceLayout::new(subsystems)
    }
}
