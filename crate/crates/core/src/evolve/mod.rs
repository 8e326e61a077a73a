//! Time evolution: exact propagators for constant generators, midpoint
//! stepping for driven ones, and the closed-form rotations used by the
//! protocols.

mod jc;
mod pulses;
mod timedep;

pub use jc::jc_rotation;
pub use pulses::{qutrit_pulse, qutrit_unitary, step5_transfer, step6_hadamard};
pub use timedep::{default_dt, propagate_timedep, TimeDependent};

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hilbert::{DenseOperator, SpaceLayout, StateVector, I};

/// A fixed evolution operator together with the time it spans.
#[derive(Clone, Debug, PartialEq)]
pub struct Propagator {
    matrix: DenseOperator,
    duration: f64,
}

impl Propagator {
    pub fn new(matrix: DenseOperator, duration: f64) -> Self {
        Self { matrix, duration }
    }

    pub fn identity(layout: SpaceLayout) -> Self {
        Self::new(DenseOperator::identity(layout), 0.0)
    }

    pub fn layout(&self) -> &SpaceLayout {
        self.matrix.layout()
    }

    pub fn operator(&self) -> &DenseOperator {
        &self.matrix
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        self.matrix.matrix()
    }

    pub fn duration(&self) -> f64 {
        self.duration
    }

    pub fn with_duration(mut self, duration: f64) -> Self {
        self.duration = duration;
        self
    }

    pub fn apply(&self, psi: &StateVector) -> Result<StateVector> {
        psi.apply(&self.matrix)
    }

    /// `next · self`: evolve by `self`, then by `next`.
    pub fn then(&self, next: &Propagator) -> Result<Propagator> {
        Ok(Propagator {
            matrix: next.matrix.compose(&self.matrix)?,
            duration: self.duration + next.duration,
        })
    }

    pub fn unitarity_defect(&self) -> f64 {
        self.matrix.unitarity_defect()
    }
}

/// `exp(−iHt)`. Hermitian generators go through an eigendecomposition;
/// anything else through scaling-and-squaring Padé.
pub fn propagator(h: &DenseOperator, t: f64) -> Result<Propagator> {
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::invalid("t", format!("duration must be finite and non-negative, got {t}")));
    }
    if !h.is_finite() {
        return Err(Error::NonFinite("generator"));
    }
    let m = if t == 0.0 {
        DMatrix::identity(h.dim(), h.dim())
    } else if h.hermitian_hint() {
        hermitian_exp(h.matrix(), t)
    } else {
        (h.matrix() * (-I * t)).exp()
    };
    let op = DenseOperator::new(h.layout().clone(), m)?;
    if !op.is_finite() {
        return Err(Error::NonFinite("matrix exponential"));
    }
    Ok(Propagator::new(op, t))
}

fn hermitian_exp(h: &DMatrix<Complex64>, t: f64) -> DMatrix<Complex64> {
    // Symmetrize so round-off in the builders cannot leak into the solver.
    let sym = (h + h.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = SymmetricEigen::new(sym);
    let v = &eig.eigenvectors;
    let phases = DMatrix::from_diagonal(&eig.eigenvalues.map(|l| Complex64::from_polar(1.0, -l * t)));
    v * phases * v.adjoint()
}

/// `exp(−iHt)ψ`. For non-Hermitian `H` the result is not renormalized; its
/// squared norm is the survival probability.
pub fn propagate_const(h: &DenseOperator, t: f64, psi: &StateVector) -> Result<StateVector> {
    if h.layout() != psi.layout() {
        return Err(Error::LayoutMismatch);
    }
    let out = propagator(h, t)?.apply(psi)?;
    if !out.is_finite() {
        return Err(Error::NonFinite("propagated state"));
    }
    Ok(out)
}

/// `e^{iH₀t} e^{−iHt}`: evolution under `H` viewed in the frame rotating
/// with the diagonal-in-practice reference `H₀`.
pub fn interaction_picture(h: &DenseOperator, h0: &DenseOperator, t: f64) -> Result<Propagator> {
    let full = propagator(h, t)?;
    let back = propagator(&(-h0.clone()), t)?;
    let m = back.operator().compose(full.operator())?;
    Ok(Propagator::new(m, t))
}
