use nalgebra::DVector;
use num_complex::Complex64;
use serde::ser::{Serialize, SerializeStruct, Serializer};

use super::{DenseOperator, SpaceLayout, Tensor, TOLERANCE};
use crate::error::{Error, Result};

/// Pure state over a [`SpaceLayout`].
///
/// Amplitudes are stored as given; only [`StateVector::normalize`] rescales.
/// States evolved under non-Hermitian generators therefore keep their
/// reduced norm, which is the survival probability.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    layout: SpaceLayout,
    amplitudes: DVector<Complex64>,
}

impl StateVector {
    pub fn new(layout: SpaceLayout, amplitudes: DVector<Complex64>) -> Result<Self> {
        if amplitudes.len() != layout.dim() {
            return Err(Error::DimensionMismatch {
                expected: layout.dim(),
                found: amplitudes.len(),
            });
        }
        Ok(Self { layout, amplitudes })
    }

    pub fn from_slice(layout: SpaceLayout, amplitudes: &[Complex64]) -> Result<Self> {
        Self::new(layout, DVector::from_column_slice(amplitudes))
    }

    /// Product basis state with one level index per subsystem.
    pub fn basis(layout: SpaceLayout, digits: &[usize]) -> Result<Self> {
        let index = layout.encode(digits)?;
        let mut amplitudes = DVector::zeros(layout.dim());
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(Self { layout, amplitudes })
    }

    pub fn zeros(layout: SpaceLayout) -> Self {
        let amplitudes = DVector::zeros(layout.dim());
        Self { layout, amplitudes }
    }

    pub fn layout(&self) -> &SpaceLayout {
        &self.layout
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amplitudes
    }

    pub fn amplitudes_mut(&mut self) -> &mut DVector<Complex64> {
        &mut self.amplitudes
    }

    pub fn into_amplitudes(self) -> DVector<Complex64> {
        self.amplitudes
    }

    pub fn amplitude(&self, digits: &[usize]) -> Result<Complex64> {
        Ok(self.amplitudes[self.layout.encode(digits)?])
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm() - 1.0).abs() < TOLERANCE
    }

    pub fn normalize(&mut self) -> Result<()> {
        let n = self.norm();
        if !n.is_finite() {
            return Err(Error::NonFinite("state norm"));
        }
        if n == 0.0 {
            return Err(Error::invalid("state", "cannot normalize the zero vector"));
        }
        self.amplitudes.unscale_mut(n);
        Ok(())
    }

    pub fn normalized(mut self) -> Result<Self> {
        self.normalize()?;
        Ok(self)
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        if self.layout != other.layout {
            return Err(Error::LayoutMismatch);
        }
        Ok(self.amplitudes.dotc(&other.amplitudes))
    }

    pub fn apply(&self, op: &DenseOperator) -> Result<StateVector> {
        if self.layout != *op.layout() {
            return Err(Error::LayoutMismatch);
        }
        Ok(StateVector {
            layout: self.layout.clone(),
            amplitudes: op.matrix() * &self.amplitudes,
        })
    }

    pub fn scaled(&self, factor: Complex64) -> StateVector {
        StateVector {
            layout: self.layout.clone(),
            amplitudes: &self.amplitudes * factor,
        }
    }

    /// Total population on basis states whose digit for `label` is `level`.
    pub fn population(&self, label: &str, level: usize) -> Result<f64> {
        let pos = self.layout.position(label)?;
        Ok(self
            .amplitudes
            .iter()
            .enumerate()
            .filter(|(i, _)| self.layout.decode(*i)[pos] == level)
            .map(|(_, z)| z.norm_sqr())
            .sum())
    }

    pub fn is_finite(&self) -> bool {
        self.amplitudes.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

impl Tensor for StateVector {
    fn layout(&self) -> &SpaceLayout {
        &self.layout
    }

    fn kron_with(&self, other: &Self, layout: SpaceLayout) -> Self {
        StateVector {
            layout,
            amplitudes: self.amplitudes.kronecker(&other.amplitudes),
        }
    }
}

/// `|⟨ψ|φ⟩|²`.
pub fn overlap_fidelity(psi: &StateVector, phi: &StateVector) -> Result<f64> {
    Ok(psi.inner(phi)?.norm_sqr())
}

/// Amplitudes serialize as `[re, im]` pairs in basis order.
impl Serialize for StateVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<[f64; 2]> = self.amplitudes.iter().map(|z| [z.re, z.im]).collect();
        let mut s = serializer.serialize_struct("StateVector", 2)?;
        s.serialize_field("layout", &self.layout)?;
        s.serialize_field("amplitudes", &pairs)?;
        s.end()
    }
}
