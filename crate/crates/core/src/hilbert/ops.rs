//! Single-subsystem matrices. Combine them with [`super::embed`].

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::c;

pub fn identity(dim: usize) -> DMatrix<Complex64> {
    DMatrix::identity(dim, dim)
}

/// Truncated annihilation operator, `a|n⟩ = √n |n−1⟩`.
pub fn annihilation(dim: usize) -> DMatrix<Complex64> {
    let mut m = DMatrix::zeros(dim, dim);
    for n in 1..dim {
        m[(n - 1, n)] = c((n as f64).sqrt());
    }
    m
}

pub fn creation(dim: usize) -> DMatrix<Complex64> {
    annihilation(dim).adjoint()
}

pub fn number(dim: usize) -> DMatrix<Complex64> {
    DMatrix::from_fn(dim, dim, |r, col| if r == col { c(r as f64) } else { c(0.0) })
}

/// `|to⟩⟨from|`.
pub fn transition(dim: usize, to: usize, from: usize) -> DMatrix<Complex64> {
    let mut m = DMatrix::zeros(dim, dim);
    m[(to, from)] = c(1.0);
    m
}

pub fn projector(dim: usize, level: usize) -> DMatrix<Complex64> {
    transition(dim, level, level)
}

/// Diagonal matrix with the given real entries.
pub fn diagonal(entries: &[f64]) -> DMatrix<Complex64> {
    let n = entries.len();
    DMatrix::from_fn(n, n, |r, col| if r == col { c(entries[r]) } else { c(0.0) })
}

/// Parity `(−1)^n` on a truncated mode.
pub fn parity(dim: usize) -> DMatrix<Complex64> {
    let signs: Vec<f64> = (0..dim).map(|n| if n % 2 == 0 { 1.0 } else { -1.0 }).collect();
    diagonal(&signs)
}

pub fn pauli_x() -> DMatrix<Complex64> {
    DMatrix::from_row_slice(2, 2, &[c(0.0), c(1.0), c(1.0), c(0.0)])
}

pub fn pauli_z() -> DMatrix<Complex64> {
    diagonal(&[1.0, -1.0])
}
