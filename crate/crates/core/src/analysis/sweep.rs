use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::fidelity::fidelity_closed_form;
use crate::error::{Error, Result};
use crate::protocol::{PulseAngles, TimingErrors};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EtaAxis {
    Eta0,
    Eta1,
    Eta2,
    Eta3,
}

impl EtaAxis {
    pub fn slot(self) -> usize {
        match self {
            EtaAxis::Eta0 => 0,
            EtaAxis::Eta1 => 1,
            EtaAxis::Eta2 => 2,
            EtaAxis::Eta3 => 3,
        }
    }

    pub fn name(self) -> &'static str {
        ["eta0", "eta1", "eta2", "eta3"][self.slot()]
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "eta0" => Some(EtaAxis::Eta0),
            "eta1" => Some(EtaAxis::Eta1),
            "eta2" => Some(EtaAxis::Eta2),
            "eta3" => Some(EtaAxis::Eta3),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub name: EtaAxis,
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

impl Axis {
    /// Evenly spaced values; the last one is `max` exactly.
    pub fn values(&self) -> Vec<f64> {
        if self.points == 1 {
            return vec![self.min];
        }
        let span = self.max - self.min;
        let last = (self.points - 1) as f64;
        (0..self.points)
            .map(|k| {
                if k + 1 == self.points {
                    self.max
                } else {
                    self.min + span * (k as f64 / last)
                }
            })
            .collect()
    }
}

/// Two swept timing errors; the other two come from `fixed`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub axis1: Axis,
    pub axis2: Axis,
    pub fixed: TimingErrors,
    pub angles: PulseAngles,
}

pub const DEFAULT_POINTS: usize = 101;
pub const DEFAULT_RANGE: f64 = 0.1;

impl SweepSpec {
    /// `η1, η3 ∈ [0, 0.1]` on a 101×101 grid with the other errors fixed.
    pub fn exchange_errors(fixed_pulse_error: f64) -> Self {
        let axis = |name| Axis {
            name,
            min: 0.0,
            max: DEFAULT_RANGE,
            points: DEFAULT_POINTS,
        };
        SweepSpec {
            axis1: axis(EtaAxis::Eta1),
            axis2: axis(EtaAxis::Eta3),
            fixed: TimingErrors {
                eta_0: fixed_pulse_error,
                eta_2: fixed_pulse_error,
                ..TimingErrors::zero()
            },
            angles: PulseAngles::ideal(),
        }
    }

    /// Pulse errors `η0 = η2 = 0`.
    pub fn exact_pulses() -> Self {
        Self::exchange_errors(0.0)
    }

    /// Pulse errors `η0 = η2 = 0.1`.
    pub fn perturbed_pulses() -> Self {
        Self::exchange_errors(0.1)
    }

    pub fn validate(&self) -> Result<()> {
        for (key, a) in [("axis1", &self.axis1), ("axis2", &self.axis2)] {
            if a.points == 0 {
                return Err(Error::invalid("points", format!("{key} needs at least one point")));
            }
            if !a.min.is_finite() || !a.max.is_finite() || a.min <= -1.0 || a.max <= -1.0 {
                return Err(Error::invalid(key, "range must be finite and above -1"));
            }
        }
        if self.axis1.name == self.axis2.name {
            return Err(Error::invalid("axis2", "the two axes must sweep different errors"));
        }
        self.fixed.validate()?;
        self.angles.validate()
    }

    fn errors_at(&self, a: f64, b: f64) -> TimingErrors {
        let mut e = self.fixed;
        e.set(self.axis1.name.slot(), a);
        e.set(self.axis2.name.slot(), b);
        e
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Corner {
    pub axis1: f64,
    pub axis2: f64,
    pub fidelity: f64,
}

/// Fidelities in row-major order: axis 1 is the slow index.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepGrid {
    pub spec: SweepSpec,
    pub axis1_values: Vec<f64>,
    pub axis2_values: Vec<f64>,
    pub results: Vec<f64>,
}

impl SweepGrid {
    pub fn shape(&self) -> (usize, usize) {
        (self.axis1_values.len(), self.axis2_values.len())
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.results[i * self.axis2_values.len() + j]
    }

    /// `(min, min)`, `(min, max)`, `(max, min)`, `(max, max)`.
    pub fn corners(&self) -> [Corner; 4] {
        let (n1, n2) = self.shape();
        [(0, 0), (0, n2 - 1), (n1 - 1, 0), (n1 - 1, n2 - 1)].map(|(i, j)| Corner {
            axis1: self.axis1_values[i],
            axis2: self.axis2_values[j],
            fidelity: self.get(i, j),
        })
    }

    /// Header row of axis names plus `fidelity`, then one row per point.
    /// Floats use the shortest representation that round-trips exactly.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(self.results.len() * 48);
        let _ = writeln!(out, "{},{},fidelity", self.spec.axis1.name.name(), self.spec.axis2.name.name());
        for (i, a) in self.axis1_values.iter().enumerate() {
            for (j, b) in self.axis2_values.iter().enumerate() {
                let _ = writeln!(out, "{a:?},{b:?},{:?}", self.get(i, j));
            }
        }
        out
    }
}

/// Evaluates the closed-form fidelity on every grid point.
pub fn sweep(spec: &SweepSpec) -> Result<SweepGrid> {
    spec.validate()?;
    let axis1_values = spec.axis1.values();
    let axis2_values = spec.axis2.values();
    let n2 = axis2_values.len();
    let results: Vec<f64> = (0..axis1_values.len() * n2)
        .into_par_iter()
        .map(|k| fidelity_closed_form(&spec.errors_at(axis1_values[k / n2], axis2_values[k % n2]), &spec.angles))
        .collect();
    Ok(SweepGrid {
        spec: spec.clone(),
        axis1_values,
        axis2_values,
        results,
    })
}
