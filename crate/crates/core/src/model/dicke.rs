use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hilbert::{c, ops, DenseOperator, SpaceLayout, Subsystem};

/// Exact collective-spin operators of `N` two-level molecules restricted to
/// the symmetric (Dicke) subspace `{|n⟩ : n ≤ cutoff}`, where `n` counts
/// excitations.
#[derive(Clone, Debug)]
pub struct CollectiveOps {
    pub s_plus: DenseOperator,
    pub s_minus: DenseOperator,
    pub s_z: DenseOperator,
    pub n_b: DenseOperator,
    pub b: DenseOperator,
    pub b_dagger: DenseOperator,
}

/// `S⁺|n⟩ = √((n+1)(N−n)) |n+1⟩`, `S^z|n⟩ = (2n − N)|n⟩`, `b = S⁻/√N`.
pub fn collective_spin_ops(n_molecules: u64, cutoff: usize) -> Result<CollectiveOps> {
    if n_molecules == 0 {
        return Err(Error::invalid("n_molecules", "need at least one molecule"));
    }
    if cutoff == 0 || cutoff as u64 > n_molecules {
        return Err(Error::InvalidCutoff {
            cutoff,
            reason: "excitation cutoff must satisfy 1 ≤ cutoff ≤ N",
        });
    }
    let big_n = n_molecules as f64;
    let dim = cutoff + 1;
    let layout = SpaceLayout::single(Subsystem::mode("ensemble", cutoff))?;

    let mut s_plus = DMatrix::<Complex64>::zeros(dim, dim);
    for n in 0..cutoff {
        let nf = n as f64;
        s_plus[(n + 1, n)] = c(((nf + 1.0) * (big_n - nf)).sqrt());
    }
    let s_minus = s_plus.adjoint();
    let s_z = ops::diagonal(&(0..dim).map(|n| 2.0 * n as f64 - big_n).collect::<Vec<_>>());
    let n_b = ops::number(dim);
    let scale = c(1.0 / big_n.sqrt());

    let op = |m: DMatrix<Complex64>| DenseOperator::new(layout.clone(), m);
    Ok(CollectiveOps {
        b: op(&s_minus * scale)?,
        b_dagger: op(&s_plus * scale)?,
        s_plus: op(s_plus)?,
        s_minus: op(s_minus)?,
        s_z: op(s_z)?,
        n_b: op(n_b)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::commutator;

    #[test]
    fn single_spin_is_raising_operator() {
        let ops = collective_spin_ops(1, 1).unwrap();
        assert_eq!(ops.s_plus.matrix(), &crate::hilbert::ops::transition(2, 1, 0));
        assert_eq!(ops.s_z.entry(0, 0), c(-1.0));
        assert_eq!(ops.s_z.entry(1, 1), c(1.0));
    }

    #[test]
    fn large_ensemble_is_bosonic_at_low_excitation() {
        let n = 10_000u64;
        let ops = collective_spin_ops(n, 2).unwrap();
        // b†|0⟩ = √(N·1·N)/N |1⟩ = |1⟩ exactly
        assert!((ops.b_dagger.entry(1, 0) - c(1.0)).norm() < 1e-15);
        // b†|1⟩ = √(2(N−1)/N) |2⟩
        let want = (2.0 * (n as f64 - 1.0) / n as f64).sqrt();
        assert!((ops.b_dagger.entry(2, 1).re - want).abs() < 1e-15);
    }

    #[test]
    fn commutator_diagonal_below_cutoff() {
        let n = 7u64;
        let cutoff = 4;
        let ops = collective_spin_ops(n, cutoff).unwrap();
        let comm = commutator(&ops.b, &ops.b_dagger).unwrap();
        for k in 0..cutoff {
            let want = 1.0 - 2.0 * k as f64 / n as f64;
            assert!((comm.entry(k, k) - c(want)).norm() < 1e-12);
        }
    }

    #[test]
    fn number_commutators() {
        let ops = collective_spin_ops(5, 5).unwrap();
        let c1 = commutator(&ops.n_b, &ops.b_dagger).unwrap();
        assert!(c1.max_abs_diff(&ops.b_dagger).unwrap() < 1e-14);
        let c2 = commutator(&ops.n_b, &ops.b).unwrap();
        assert!(c2.max_abs_diff(&(-ops.b.clone())).unwrap() < 1e-14);
    }

    #[test]
    fn cutoff_bounds() {
        assert!(matches!(collective_spin_ops(3, 4), Err(Error::InvalidCutoff { .. })));
        assert!(matches!(collective_spin_ops(3, 0), Err(Error::InvalidCutoff { .. })));
    }
}
