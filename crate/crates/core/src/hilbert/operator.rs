use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{ops, SpaceLayout, Tensor, TOLERANCE};
use crate::error::{Error, Result};

/// Dense square operator over a [`SpaceLayout`], possibly non-Hermitian.
///
/// The arithmetic operators panic when the operand layouts differ; use
/// [`commutator`] or [`DenseOperator::compose`] for checked variants.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseOperator {
    layout: SpaceLayout,
    matrix: DMatrix<Complex64>,
    hermitian_hint: bool,
}

impl DenseOperator {
    /// Wraps `matrix`, recording whether it is Hermitian to [`TOLERANCE`].
    pub fn new(layout: SpaceLayout, matrix: DMatrix<Complex64>) -> Result<Self> {
        let d = layout.dim();
        if matrix.nrows() != d || matrix.ncols() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: matrix.nrows().max(matrix.ncols()),
            });
        }
        let hermitian_hint = hermitian_defect(&matrix) < TOLERANCE;
        Ok(Self {
            layout,
            matrix,
            hermitian_hint,
        })
    }

    pub fn identity(layout: SpaceLayout) -> Self {
        let d = layout.dim();
        Self {
            layout,
            matrix: DMatrix::identity(d, d),
            hermitian_hint: true,
        }
    }

    pub fn zeros(layout: SpaceLayout) -> Self {
        let d = layout.dim();
        Self {
            layout,
            matrix: DMatrix::zeros(d, d),
            hermitian_hint: true,
        }
    }

    pub fn layout(&self) -> &SpaceLayout {
        &self.layout
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.matrix
    }

    pub fn hermitian_hint(&self) -> bool {
        self.hermitian_hint
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.matrix[(row, col)]
    }

    pub fn dagger(&self) -> DenseOperator {
        DenseOperator {
            layout: self.layout.clone(),
            matrix: self.matrix.adjoint(),
            hermitian_hint: self.hermitian_hint,
        }
    }

    /// `max |A − A†|` over all entries.
    pub fn hermitian_defect(&self) -> f64 {
        hermitian_defect(&self.matrix)
    }

    /// `max |U†U − I|` over all entries.
    pub fn unitarity_defect(&self) -> f64 {
        let d = self.dim();
        let p = self.matrix.adjoint() * &self.matrix;
        max_abs(&(p - DMatrix::identity(d, d)))
    }

    /// Max-abs-entry distance, the equality metric used throughout.
    pub fn max_abs_diff(&self, other: &DenseOperator) -> Result<f64> {
        check_same(self, other)?;
        Ok(max_abs(&(&self.matrix - &other.matrix)))
    }

    pub fn max_abs(&self) -> f64 {
        max_abs(&self.matrix)
    }

    /// Checked product `self · other`.
    pub fn compose(&self, other: &DenseOperator) -> Result<DenseOperator> {
        check_same(self, other)?;
        Ok(self.with_matrix(&self.matrix * &other.matrix))
    }

    pub fn scale(&self, factor: Complex64) -> DenseOperator {
        self.with_matrix(&self.matrix * factor)
    }

    pub fn is_diagonal(&self) -> bool {
        self.matrix
            .iter()
            .enumerate()
            .all(|(k, z)| k % (self.dim() + 1) == 0 || *z == Complex64::new(0.0, 0.0))
    }

    pub fn is_finite(&self) -> bool {
        self.matrix.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub(crate) fn with_matrix(&self, matrix: DMatrix<Complex64>) -> DenseOperator {
        let hermitian_hint = hermitian_defect(&matrix) < TOLERANCE;
        DenseOperator {
            layout: self.layout.clone(),
            matrix,
            hermitian_hint,
        }
    }

    pub(crate) fn from_parts(layout: SpaceLayout, matrix: DMatrix<Complex64>) -> DenseOperator {
        debug_assert_eq!(layout.dim(), matrix.nrows());
        let hermitian_hint = hermitian_defect(&matrix) < TOLERANCE;
        DenseOperator {
            layout,
            matrix,
            hermitian_hint,
        }
    }
}

fn hermitian_defect(m: &DMatrix<Complex64>) -> f64 {
    if m.nrows() != m.ncols() {
        return f64::INFINITY;
    }
    max_abs(&(m - m.adjoint()))
}

fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn check_same(a: &DenseOperator, b: &DenseOperator) -> Result<()> {
    if a.layout != b.layout {
        return Err(Error::LayoutMismatch);
    }
    Ok(())
}

impl Tensor for DenseOperator {
    fn layout(&self) -> &SpaceLayout {
        &self.layout
    }

    fn kron_with(&self, other: &Self, layout: SpaceLayout) -> Self {
        DenseOperator {
            layout,
            matrix: self.matrix.kronecker(&other.matrix),
            hermitian_hint: self.hermitian_hint && other.hermitian_hint,
        }
    }
}

/// Lifts a single-subsystem matrix onto `layout`, acting as the identity on
/// every other subsystem.
pub fn embed(op: &DMatrix<Complex64>, target: &str, layout: &SpaceLayout) -> Result<DenseOperator> {
    let pos = layout.position(target)?;
    let dim = layout.subsystems()[pos].dim;
    if op.nrows() != dim || op.ncols() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: op.nrows().max(op.ncols()),
        });
    }
    let left: usize = layout.subsystems()[..pos].iter().map(|s| s.dim).product();
    let right = layout.stride(pos);
    let matrix = ops::identity(left)
        .kronecker(op)
        .kronecker(&ops::identity(right));
    Ok(DenseOperator::from_parts(layout.clone(), matrix))
}

/// `AB − BA`.
pub fn commutator(a: &DenseOperator, b: &DenseOperator) -> Result<DenseOperator> {
    check_same(a, b)?;
    let m = &a.matrix * &b.matrix - &b.matrix * &a.matrix;
    Ok(DenseOperator::from_parts(a.layout.clone(), m))
}

macro_rules! binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait<&DenseOperator> for &DenseOperator {
            type Output = DenseOperator;

            fn $method(self, rhs: &DenseOperator) -> DenseOperator {
                assert_eq!(self.layout, rhs.layout, "operator layouts differ");
                self.with_matrix(&self.matrix $op &rhs.matrix)
            }
        }

        impl $trait<DenseOperator> for DenseOperator {
            type Output = DenseOperator;

            fn $method(self, rhs: DenseOperator) -> DenseOperator {
                &self $op &rhs
            }
        }

        impl $trait<&DenseOperator> for DenseOperator {
            type Output = DenseOperator;

            fn $method(self, rhs: &DenseOperator) -> DenseOperator {
                &self $op rhs
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);

impl Mul<f64> for &DenseOperator {
    type Output = DenseOperator;

    fn mul(self, rhs: f64) -> DenseOperator {
        DenseOperator {
            layout: self.layout.clone(),
            matrix: &self.matrix * Complex64::new(rhs, 0.0),
            hermitian_hint: self.hermitian_hint,
        }
    }
}

impl Mul<f64> for DenseOperator {
    type Output = DenseOperator;

    fn mul(self, rhs: f64) -> DenseOperator {
        &self * rhs
    }
}

impl Mul<Complex64> for &DenseOperator {
    type Output = DenseOperator;

    fn mul(self, rhs: Complex64) -> DenseOperator {
        self.scale(rhs)
    }
}

impl Neg for DenseOperator {
    type Output = DenseOperator;

    fn neg(self) -> DenseOperator {
        self * -1.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{c, tensor, StateVector, Subsystem};

    fn layout(subs: Vec<Subsystem>) -> SpaceLayout {
        SpaceLayout::new(subs).unwrap()
    }

    #[test]
    fn tensor_of_identities_is_identity() {
        let i2 = DenseOperator::identity(layout(vec![Subsystem::qubit("a")]));
        let i3 = DenseOperator::identity(layout(vec![Subsystem::qutrit("b")]));
        let i6 = tensor([&i2, &i3]).unwrap();
        assert_eq!(i6.matrix(), &DMatrix::<Complex64>::identity(6, 6));
        assert_eq!(i6.layout().dim(), 6);
    }

    #[test]
    fn embed_sigma_z_on_qutrit() {
        let l = layout(vec![Subsystem::qutrit("scq"), Subsystem::mode("res", 2)]);
        let sz = ops::diagonal(&[0.0, -1.0, 1.0]);
        let op = embed(&sz, "scq", &l).unwrap();
        assert_eq!(op.matrix(), &sz.kronecker(&ops::identity(3)));
    }

    #[test]
    fn embed_annihilation_acts_on_one_slot() {
        let l = layout(vec![Subsystem::qutrit("scq"), Subsystem::mode("res", 3)]);
        let a = embed(&ops::annihilation(4), "res", &l).unwrap();
        let psi = StateVector::basis(l.clone(), &[1, 3]).unwrap();
        let out = psi.apply(&a).unwrap();
        let want = StateVector::basis(l, &[1, 2]).unwrap().scaled(c(3f64.sqrt()));
        assert!((out.amplitudes() - want.amplitudes()).norm() < 1e-15);
    }

    #[test]
    fn embed_x_on_middle_qubit() {
        let l = layout(vec![
            Subsystem::qubit("q1"),
            Subsystem::qubit("q2"),
            Subsystem::qubit("q3"),
        ]);
        let x = embed(&ops::pauli_x(), "q2", &l).unwrap();
        // |010⟩ is index 2, |000⟩ is index 0
        let psi = StateVector::basis(l.clone(), &[0, 1, 0]).unwrap();
        let out = psi.apply(&x).unwrap();
        assert_eq!(out.amplitudes()[0], c(1.0));
        assert_eq!(out.norm_sqr(), 1.0);
    }

    #[test]
    fn embed_errors() {
        let l = layout(vec![Subsystem::qutrit("scq")]);
        assert_eq!(
            embed(&ops::identity(3), "nope", &l).unwrap_err(),
            Error::UnknownSubsystem("nope".into())
        );
        assert!(matches!(
            embed(&ops::identity(2), "scq", &l),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn commutator_of_truncated_ladder() {
        let l = layout(vec![Subsystem::mode("res", 4)]);
        let a = embed(&ops::annihilation(5), "res", &l).unwrap();
        let comm = commutator(&a, &a.dagger()).unwrap();
        for n in 0..5 {
            let want = if n < 4 { 1.0 } else { -4.0 };
            assert!((comm.entry(n, n) - c(want)).norm() < 1e-14);
        }
        assert!(commutator(&a, &a).unwrap().max_abs() == 0.0);
    }

    #[test]
    fn commutator_layout_mismatch() {
        let a = DenseOperator::identity(layout(vec![Subsystem::qubit("a")]));
        let b = DenseOperator::identity(layout(vec![Subsystem::qubit("b")]));
        assert_eq!(commutator(&a, &b).unwrap_err(), Error::LayoutMismatch);
    }

    #[test]
    fn hermitian_hint_tracks_matrix() {
        let l = layout(vec![Subsystem::qubit("q")]);
        let x = DenseOperator::new(l.clone(), ops::pauli_x()).unwrap();
        assert!(x.hermitian_hint());
        let up = DenseOperator::new(l, ops::transition(2, 0, 1)).unwrap();
        assert!(!up.hermitian_hint());
    }
}
