use nalgebra::DMatrix;
use num_complex::Complex64;
use std::f64::consts::FRAC_1_SQRT_2;

use super::Propagator;
use crate::error::{Error, Result};
use crate::hilbert::{c, embed, SpaceLayout, I};
use crate::model::Level;

/// Resonant classical pulse on the `(u, v)` transition of one qutrit:
///
/// `|u⟩ → cos θ |u⟩ − i e^{−iφ} sin θ |v⟩`
/// `|v⟩ → cos θ |v⟩ − i e^{iφ} sin θ |u⟩`
///
/// where `θ` is the pulse area `Ω·t`. The third level and all other
/// subsystems are untouched.
pub fn qutrit_pulse(
    pair: (Level, Level),
    theta: f64,
    phase: f64,
    layout: &SpaceLayout,
    target: &str,
) -> Result<Propagator> {
    let (u, v) = pair;
    if u == v {
        return Err(Error::invalid("pair", "pulse levels must differ"));
    }
    let (s, co) = theta.sin_cos();
    let e = (-I * phase).exp();
    let mut m = DMatrix::<Complex64>::identity(3, 3);
    m[(u.index(), u.index())] = c(co);
    m[(v.index(), v.index())] = c(co);
    m[(v.index(), u.index())] = -I * e * s;
    m[(u.index(), v.index())] = -I * e.conj() * s;
    qutrit_unitary(&m, layout, target)
}

/// Lifts an arbitrary 3×3 single-qutrit unitary onto `layout`.
pub fn qutrit_unitary(m: &DMatrix<Complex64>, layout: &SpaceLayout, target: &str) -> Result<Propagator> {
    Ok(Propagator::new(embed(m, target, layout)?, 0.0))
}

/// The literal transfer `|i⟩ → |e⟩` (and `|e⟩ → −|i⟩`), with no stray
/// phase on the transferred branch. Equal to `qutrit_pulse((i, e), π/2, −π/2)`.
pub fn step5_transfer(layout: &SpaceLayout, target: &str) -> Result<Propagator> {
    let (i, e) = (Level::I.index(), Level::E.index());
    let mut m = DMatrix::<Complex64>::identity(3, 3);
    m[(i, i)] = c(0.0);
    m[(e, e)] = c(0.0);
    m[(e, i)] = c(1.0);
    m[(i, e)] = c(-1.0);
    qutrit_unitary(&m, layout, target)
}

/// `|g⟩ → (|g⟩ − |e⟩)/√2`, `|e⟩ → (|e⟩ + |g⟩)/√2`, `|i⟩` fixed. Equal to
/// `qutrit_pulse((g, e), π/4, π/2)`.
pub fn step6_hadamard(layout: &SpaceLayout, target: &str) -> Result<Propagator> {
    let (g, e) = (Level::G.index(), Level::E.index());
    let h = FRAC_1_SQRT_2;
    let mut m = DMatrix::<Complex64>::identity(3, 3);
    m[(g, g)] = c(h);
    m[(e, g)] = c(-h);
    m[(e, e)] = c(h);
    m[(g, e)] = c(h);
    qutrit_unitary(&m, layout, target)
}
