//! Composite Hilbert spaces and dense complex linear algebra.
//!
//! Basis indices use a mixed-radix encoding in which the first listed
//! subsystem is the most significant digit, so `tensor(a, b, c)` lays out
//! amplitudes in the same order a ket `|a⟩|b⟩|c⟩` is read.

mod layout;
pub mod ops;
mod operator;
mod state;

pub use layout::{SpaceLayout, Subsystem, SubsystemKind};
pub use num_complex::Complex64;
pub use operator::{commutator, embed, DenseOperator};
pub use state::{overlap_fidelity, StateVector};

use crate::error::{Error, Result};

/// Default tolerance for normalization and Hermiticity checks.
pub const TOLERANCE: f64 = 1e-12;

/// Values that can be combined with a Kronecker product.
pub trait Tensor: Sized + Clone {
    fn layout(&self) -> &SpaceLayout;

    #[doc(hidden)]
    fn kron_with(&self, other: &Self, layout: SpaceLayout) -> Self;
}

/// Kronecker product of the factors in the given order.
///
/// The resulting layout is the concatenation of the factor layouts; labels
/// must not repeat.
pub fn tensor<'a, T, I>(factors: I) -> Result<T>
where
    T: Tensor + 'a,
    I: IntoIterator<Item = &'a T>,
{
    let mut iter = factors.into_iter();
    let first = iter.next().ok_or(Error::EmptyFactors)?;
    let mut acc = first.clone();
    for next in iter {
        let layout = acc.layout().concat(next.layout())?;
        acc = acc.kron_with(next, layout);
    }
    Ok(acc)
}

pub(crate) fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub(crate) const I: Complex64 = Complex64::new(0.0, 1.0);
