use num_complex::Complex64;
use serde::Serialize;

use super::scheme_two::{register_layout, scheme2_n_qubit};
use crate::error::{Error, Result};
use crate::hilbert::{overlap_fidelity, StateVector};
use crate::model::Level;

/// Tolerance for declaring the closed form and the protocol equal.
pub const MATCH_TOLERANCE: f64 = 1e-9;

/// Coefficients `α_0 … α_n` and the prefactor of the closed-form KLM state.
fn coefficients(n: usize) -> (f64, Vec<Complex64>) {
    let nf = n as f64;
    let im1 = Complex64::new(-1.0, 1.0);
    let i = Complex64::new(0.0, 1.0);
    let pw = |k: i64| im1.powi(k as i32);
    let mut alpha = Vec::with_capacity(n + 1);
    let prefactor;
    if n % 2 == 0 {
        prefactor = 2f64.sqrt().powi(-(n as i32 + 1));
        alpha.push(Complex64::new(2f64.powf(nf / 2.0), 0.0));
        for j in 1..n {
            alpha.push(-pw(j as i64 - 2) * 2f64.powf(nf / 2.0 - j as f64 + 1.0));
        }
        alpha.push(-i * pw(n as i64 - 3) * 2f64.powf(2.0 - nf / 2.0));
    } else {
        prefactor = 2f64.sqrt().powi(-(n as i32));
        alpha.push(Complex64::new(2f64.powf((nf - 1.0) / 2.0), 0.0));
        for j in 1..n {
            alpha.push(-pw(j as i64 - 2) * 2f64.powf((nf + 1.0) / 2.0 - j as f64));
        }
        alpha.push(-i * pw(n as i64 - 3) * 2f64.powf((3.0 - nf) / 2.0));
    }
    (prefactor, alpha)
}

/// Closed-form `n`-qubit KLM state as printed, with `α_j` multiplying the
/// basis state whose first `j` qutrits are in `|g⟩` and the rest in `|i⟩`.
/// The result is not renormalized.
pub fn klm_closed_form(n: usize) -> Result<StateVector> {
    if n < 2 {
        return Err(Error::invalid("n", format!("a KLM register needs at least 2 qubits, got {n}")));
    }
    let layout = register_layout(n)?;
    let (prefactor, alpha) = coefficients(n);
    let mut s = StateVector::zeros(layout.clone());
    for (j, a) in alpha.iter().enumerate() {
        let digits: Vec<usize> = (0..n)
            .map(|k| if k < j { Level::G.index() } else { Level::I.index() })
            .collect();
        s.amplitudes_mut()[layout.encode(&digits)?] = a * prefactor;
    }
    Ok(s)
}

/// Protocol output against the closed form for one register size.
#[derive(Clone, Debug, Serialize)]
pub struct KlmComparison {
    pub n: usize,
    /// `|⟨closed|protocol⟩|² / ⟨closed|closed⟩`.
    pub overlap: f64,
    pub closed_form_norm: f64,
    pub matches: bool,
    pub protocol: StateVector,
    pub closed_form: StateVector,
}

pub fn compare_klm(n: usize) -> Result<KlmComparison> {
    let protocol = scheme2_n_qubit(n)?;
    let closed_form = klm_closed_form(n)?;
    let norm_sqr = closed_form.norm_sqr();
    let overlap = overlap_fidelity(&closed_form, &protocol)? / norm_sqr;
    Ok(KlmComparison {
        n,
        overlap,
        closed_form_norm: norm_sqr.sqrt(),
        matches: (1.0 - overlap).abs() < MATCH_TOLERANCE && (norm_sqr.sqrt() - 1.0).abs() < MATCH_TOLERANCE,
        protocol,
        closed_form,
    })
}
