use nalgebra::DMatrix;
use num_complex::Complex64;

use super::Propagator;
use crate::error::{Error, Result};
use crate::hilbert::{DenseOperator, SpaceLayout, SubsystemKind, I};
use crate::model::Level;

/// Resonant qutrit–mode exchange with the block phase dropped:
///
/// `|e,n⟩ → cos(g√(n+1)t)|e,n⟩ − i sin(g√(n+1)t)|g,n+1⟩`
/// `|g,n+1⟩ → cos(g√(n+1)t)|g,n+1⟩ − i sin(g√(n+1)t)|e,n⟩`
///
/// `|i,n⟩` and `|g,0⟩` are untouched, as is `|e,cutoff⟩`, whose partner lies
/// outside the truncated space. Every other subsystem is a spectator.
pub fn jc_rotation(g: f64, t: f64, layout: &SpaceLayout, scq: &str, mode: &str) -> Result<Propagator> {
    let qp = layout.position(scq)?;
    let mp = layout.position(mode)?;
    if layout.subsystems()[qp].kind != SubsystemKind::Qutrit {
        return Err(Error::invalid("scq", format!("`{scq}` is not a qutrit")));
    }
    let dim_mode = layout.subsystems()[mp].dim;
    let d = layout.dim();
    let mut m = DMatrix::<Complex64>::identity(d, d);

    for idx in 0..d {
        let digits = layout.decode(idx);
        if digits[qp] != Level::E.index() || digits[mp] + 1 >= dim_mode {
            continue;
        }
        let n = digits[mp];
        let mut partner = digits.clone();
        partner[qp] = Level::G.index();
        partner[mp] = n + 1;
        let jdx = layout.encode(&partner)?;

        let angle = g * ((n + 1) as f64).sqrt() * t;
        let (s, co) = angle.sin_cos();
        m[(idx, idx)] = Complex64::new(co, 0.0);
        m[(jdx, jdx)] = Complex64::new(co, 0.0);
        m[(jdx, idx)] = -I * s;
        m[(idx, jdx)] = -I * s;
    }
    Ok(Propagator::new(DenseOperator::new(layout.clone(), m)?, t))
}
