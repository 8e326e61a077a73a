use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::evolve::{propagator, Propagator};
use crate::hilbert::{DenseOperator, SpaceLayout, StateVector, Subsystem};
use crate::model::{build_h_s2, labels, Level, SchemeTwoParams};

/// Leakage above which the dispersive gate picture is abandoned.
pub const MAX_LEAKAGE: f64 = 0.5;

/// Diagonal gate that multiplies every component with `q1` and `q2` both in
/// `|g⟩` by `e^{iφ}` and leaves everything else alone.
pub fn cphase_ideal(phi: f64, layout: &SpaceLayout, q1: &str, q2: &str) -> Result<Propagator> {
    let (p1, p2) = (layout.position(q1)?, layout.position(q2)?);
    for (label, pos) in [(q1, p1), (q2, p2)] {
        if layout.subsystems()[pos].dim != 3 {
            return Err(Error::invalid("cphase", format!("`{label}` is not a qutrit")));
        }
    }
    if p1 == p2 {
        return Err(Error::invalid("cphase", "the gate needs two distinct qutrits"));
    }
    let g = Level::G.index();
    let phase = Complex64::from_polar(1.0, phi);
    let diag: Vec<Complex64> = (0..layout.dim())
        .map(|idx| {
            let d = layout.decode(idx);
            if d[p1] == g && d[p2] == g {
                phase
            } else {
                Complex64::new(1.0, 0.0)
            }
        })
        .collect();
    let m = nalgebra::DMatrix::from_diagonal(&nalgebra::DVector::from_vec(diag));
    Ok(Propagator::new(DenseOperator::new(layout.clone(), m)?, 0.0))
}

/// Rabi frequency entering the phase formula, `|Ω|² = |Ω₁Ω₂|`.
fn rabi_sqr(p: &SchemeTwoParams) -> f64 {
    (p.rabi_1 * p.rabi_2).abs()
}

/// `φ = −t|Ω|² / 2(Δ + δ)`.
pub fn phase_for_time(t: f64, p: &SchemeTwoParams) -> Result<f64> {
    let d = p.delta() + p.small_delta();
    if d == 0.0 {
        return Err(Error::ZeroDetuning("delta + small_delta"));
    }
    Ok(-t * rabi_sqr(p) / (2.0 * d))
}

/// Interaction time producing conditional phase `phi`:
/// `t = −2φ(Δ + δ)/|Ω|²`.
pub fn gate_time_for_phase(phi: f64, p: &SchemeTwoParams) -> Result<f64> {
    let o2 = rabi_sqr(p);
    if o2 == 0.0 {
        return Err(Error::invalid("rabi", "the gate needs a nonzero drive"));
    }
    let d = p.delta() + p.small_delta();
    if d == 0.0 {
        return Err(Error::ZeroDetuning("delta + small_delta"));
    }
    let t = -2.0 * phi * d / o2;
    if t < 0.0 {
        return Err(Error::invalid(
            "phi",
            format!("phase {phi} has the wrong sign for detuning {d}; it needs negative time"),
        ));
    }
    Ok(t)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BranchPhases {
    pub ii: f64,
    pub ig: f64,
    pub gi: f64,
    pub gg: f64,
}

impl BranchPhases {
    /// `φ_gg + φ_ii − φ_gi − φ_ig`.
    pub fn entangling(&self) -> f64 {
        self.gg + self.ii - self.gi - self.ig
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GateReport {
    pub duration: f64,
    pub entangling_phase: f64,
    /// Phase predicted by the dispersive formula for the same duration.
    pub predicted_phase: f64,
    /// Largest final population outside the computational states with the
    /// resonator empty.
    pub leakage: f64,
    /// Smallest final squared norm over the four branches.
    pub survival: f64,
    pub branch_phases: BranchPhases,
    pub steps: usize,
}

pub fn gate_layout(cutoff: usize) -> Result<SpaceLayout> {
    if cutoff < 1 {
        return Err(Error::InvalidCutoff {
            cutoff,
            reason: "the resonator needs at least one photon level",
        });
    }
    SpaceLayout::new(vec![
        Subsystem::qutrit(labels::SCQ1),
        Subsystem::qutrit(labels::SCQ2),
        Subsystem::mode(labels::RES, cutoff),
    ])
}

fn wrap(x: f64) -> f64 {
    let y = x.rem_euclid(2.0 * PI);
    if y > PI {
        y - 2.0 * PI
    } else {
        y
    }
}

/// Evolves the four computational inputs `|xy, 0⟩` under the non-Hermitian
/// two-qutrit Hamiltonian for time `t` and extracts the continuously
/// unwrapped phase of each input's own amplitude.
pub fn cphase_numeric(p: &SchemeTwoParams, t: f64, cutoff: usize) -> Result<GateReport> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::invalid("t", format!("gate time {t} must be finite and non-negative")));
    }
    let layout = gate_layout(cutoff)?;
    let h = build_h_s2(p, &layout)?;

    // The largest entry bounds the fastest bare frequency; keep it under a
    // quarter turn per step so unwrapping never skips a branch cut.
    let steps = ((t * h.max_abs() / (PI / 2.0)).ceil() as usize).max(1000);
    let dt = t / steps as f64;
    let u = propagator(&h, dt)?;

    let (i, g) = (Level::I.index(), Level::G.index());
    let computational: Vec<usize> = [[i, i], [i, g], [g, i], [g, g]]
        .iter()
        .map(|[x, y]| layout.encode(&[*x, *y, 0]))
        .collect::<Result<_>>()?;

    let mut phases = [0.0; 4];
    let mut leakage: f64 = 0.0;
    let mut survival: f64 = 1.0;
    for (b, &idx) in computational.iter().enumerate() {
        let mut psi = StateVector::basis(layout.clone(), &layout.decode(idx))?;
        let mut last_arg = 0.0;
        let mut acc = 0.0;
        for _ in 0..steps {
            psi = u.apply(&psi)?;
            let arg = psi.amplitudes()[idx].arg();
            acc += wrap(arg - last_arg);
            last_arg = arg;
        }
        if !psi.is_finite() {
            return Err(Error::NonFinite("gate evolution"));
        }
        let norm_sqr = psi.norm_sqr();
        let inside: f64 = computational.iter().map(|&k| psi.amplitudes()[k].norm_sqr()).sum();
        phases[b] = acc;
        leakage = leakage.max(norm_sqr - inside);
        survival = survival.min(norm_sqr);
    }

    if leakage > MAX_LEAKAGE {
        return Err(Error::RegimeViolation { leakage });
    }
    let branch_phases = BranchPhases {
        ii: phases[0],
        ig: phases[1],
        gi: phases[2],
        gg: phases[3],
    };
    Ok(GateReport {
        duration: t,
        entangling_phase: branch_phases.entangling(),
        predicted_phase: phase_for_time(t, p)?,
        leakage,
        survival,
        branch_phases,
        steps,
    })
}
