use crate::error::Result;
use crate::hilbert::overlap_fidelity;
use crate::model::SchemeOneParams;
use crate::protocol::scheme_one::amplitudes;
use crate::protocol::{Engine, PulseAngles, SchemeOneRun, TimingErrors};

/// `|α*α′ + β*β′ + γ*γ′|²` divided by `(|α|² + |β|² + |γ|²)²`.
///
/// The denominator is one for exact exchange areas `g·t1 = g·t3 = π/2`, and
/// dividing by it makes the error-free value exactly `1.0`. For other
/// exchange areas the ideal state has weight outside the three brackets and
/// this is no longer the full state overlap.
pub fn fidelity_closed_form(etas: &TimingErrors, angles: &PulseAngles) -> f64 {
    let ideal = amplitudes(angles, &TimingErrors::zero());
    let real = amplitudes(angles, etas);
    let overlap: num_complex::Complex64 = ideal.iter().zip(&real).map(|(a, b)| a.conj() * b).sum();
    let norm: f64 = ideal.iter().map(|a| a.norm_sqr()).sum();
    overlap.norm_sqr() / (norm * norm)
}

/// Overlap of the simulated post-Step-6 states with and without timing
/// errors, closed-form engine.
pub fn fidelity_simulated(etas: &TimingErrors, angles: &PulseAngles, p: &SchemeOneParams) -> Result<f64> {
    fidelity_simulated_with(etas, angles, p, Engine::ClosedForm)
}

pub fn fidelity_simulated_with(
    etas: &TimingErrors,
    angles: &PulseAngles,
    p: &SchemeOneParams,
    engine: Engine,
) -> Result<f64> {
    let base = SchemeOneRun {
        angles: *angles,
        engine,
        ..SchemeOneRun::new(p.clone())
    };
    let ideal = base.run()?;
    let real = SchemeOneRun { etas: *etas, ..base }.run()?;
    overlap_fidelity(ideal.final_state(), real.final_state())
}
