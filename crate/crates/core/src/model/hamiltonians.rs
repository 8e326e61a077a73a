use num_complex::Complex64;

use super::{labels, sigma_minus, sigma_plus, sigma_z, Level, SchemeOneParams, SchemeTwoParams};
use crate::error::{Error, Result};
use crate::hilbert::{embed, ops, DenseOperator, SpaceLayout, SubsystemKind, I};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Frame {
    /// Drive written with its explicit `e^{∓iω_d t}` time dependence.
    Lab,
    /// Rotating at the drive frequency; every subsystem energy becomes a
    /// detuning from `ω_d` and the drive term is static.
    DriveRotating,
}

/// `H(t) = base + drive·e^{−iωt} + drive†·e^{iωt}`.
#[derive(Clone, Debug)]
pub struct DrivenOperator {
    pub base: DenseOperator,
    pub drive: DenseOperator,
    pub omega: f64,
}

impl DrivenOperator {
    pub fn layout(&self) -> &SpaceLayout {
        self.base.layout()
    }

    pub fn at(&self, t: f64) -> DenseOperator {
        let phase = Complex64::from_polar(1.0, -self.omega * t);
        &self.base + &(&self.drive * phase) + &(&self.drive.dagger() * phase.conj())
    }

    /// Largest angular frequency present, used to pick a time step.
    pub fn max_frequency(&self) -> f64 {
        self.omega.abs().max(self.base.max_abs()).max(self.drive.max_abs())
    }
}

#[derive(Clone, Debug)]
pub enum Hamiltonian {
    Static(DenseOperator),
    Driven(DrivenOperator),
}

impl Hamiltonian {
    pub fn at(&self, t: f64) -> DenseOperator {
        match self {
            Hamiltonian::Static(h) => h.clone(),
            Hamiltonian::Driven(d) => d.at(t),
        }
    }

    pub fn layout(&self) -> &SpaceLayout {
        match self {
            Hamiltonian::Static(h) => h.layout(),
            Hamiltonian::Driven(d) => d.layout(),
        }
    }
}

fn require_qutrit(layout: &SpaceLayout, label: &str) -> Result<()> {
    let s = layout.subsystem(label)?;
    if s.kind != SubsystemKind::Qutrit {
        return Err(Error::InvalidDimension {
            label: label.to_owned(),
            dim: s.dim,
            reason: "expected a qutrit",
        });
    }
    Ok(())
}

fn require_mode(layout: &SpaceLayout, label: &str) -> Result<usize> {
    let s = layout.subsystem(label)?;
    if s.kind != SubsystemKind::Mode {
        return Err(Error::InvalidDimension {
            label: label.to_owned(),
            dim: s.dim,
            reason: "expected a bosonic mode",
        });
    }
    Ok(s.dim)
}

/// Full driven qutrit–resonator–ensemble Hamiltonian on a layout holding
/// `scq`, `res` and the bosonized ensemble mode `ensemble`:
///
/// `H = ω_s/2 σ^z + Ω(σ⁻e^{iω_d t} + σ⁺e^{−iω_d t}) + ω_m b†b + ω_c a†a
///      + g_s(σ⁺a + σ⁻a†) + g_m√N (b†a + b a†)`
///
/// with `ω_m/2·S^z = ω_m b†b − Nω_m/2` and the constant dropped.
pub fn build_h_full_s1(
    p: &SchemeOneParams,
    layout: &SpaceLayout,
    ensemble: &str,
    frame: Frame,
) -> Result<Hamiltonian> {
    require_qutrit(layout, labels::SCQ)?;
    let dr = require_mode(layout, labels::RES)?;
    let dm = require_mode(layout, ensemble)?;

    let sz = embed(&sigma_z(), labels::SCQ, layout)?;
    let sp = embed(&sigma_plus(), labels::SCQ, layout)?;
    let a = embed(&ops::annihilation(dr), labels::RES, layout)?;
    let b = embed(&ops::annihilation(dm), ensemble, layout)?;
    let na = embed(&ops::number(dr), labels::RES, layout)?;
    let nb = embed(&ops::number(dm), ensemble, layout)?;

    let jc_s = &(&sp * &a) + &(&sp * &a).dagger();
    let jc_m = &(&b.dagger() * &a) + &(&b.dagger() * &a).dagger();
    let couplings = &(&jc_s * p.g_s) + &(&jc_m * (p.g_m * (p.n_molecules as f64).sqrt()));

    match frame {
        Frame::Lab => {
            let base = &(&(&(&sz * (p.omega_s / 2.0)) + &(&nb * p.omega_m)) + &(&na * p.omega_c))
                + &couplings;
            Ok(Hamiltonian::Driven(DrivenOperator {
                base,
                drive: &sp * p.rabi,
                omega: p.omega_d,
            }))
        }
        Frame::DriveRotating => {
            let drive = &(&sp + &sp.dagger()) * p.rabi;
            let h = &(&(&(&sz * (p.delta_d() / 2.0)) + &(&nb * (p.omega_m - p.omega_d)))
                + &(&na * (p.omega_c - p.omega_d)))
                + &(&couplings + &drive);
            Ok(Hamiltonian::Static(h))
        }
    }
}

/// Reduced resonator-free Hamiltonian
/// `H = ½(2λ_sd + λ_sc)σ^z + g(σ⁺b + σ⁻b†) + Nλ_mc b†b`
/// acting on the qutrit `scq` and the ensemble mode `mode`.
pub fn build_h_eff_s1(p: &SchemeOneParams, layout: &SpaceLayout, mode: &str) -> Result<DenseOperator> {
    require_qutrit(layout, labels::SCQ)?;
    let dm = require_mode(layout, mode)?;
    let s = p.stark_shifts()?;

    let sz = embed(&sigma_z(), labels::SCQ, layout)?;
    let sp = embed(&sigma_plus(), labels::SCQ, layout)?;
    let sm = embed(&sigma_minus(), labels::SCQ, layout)?;
    let b = embed(&ops::annihilation(dm), mode, layout)?;
    let nb = embed(&ops::number(dm), mode, layout)?;

    let exchange = &(&sp * &b) + &(&sm * &b.dagger());
    Ok(&(&(&sz * ((2.0 * s.lambda_sd + s.lambda_sc) / 2.0)) + &(&exchange * s.g_eff))
        + &(&nb * (p.n_molecules as f64 * s.lambda_mc)))
}

/// `Nλ_mc(σ^z/2 + b†b)`: the part of the reduced Hamiltonian that commutes
/// with the exchange term at resonance. Rotating it away leaves the bare
/// Jaynes–Cummings exchange.
pub fn interaction_frame(p: &SchemeOneParams, layout: &SpaceLayout, mode: &str) -> Result<DenseOperator> {
    require_qutrit(layout, labels::SCQ)?;
    let dm = require_mode(layout, mode)?;
    let s = p.stark_shifts()?;
    let sz = embed(&sigma_z(), labels::SCQ, layout)?;
    let nb = embed(&ops::number(dm), mode, layout)?;
    Ok(&(&(&sz * 0.5) + &nb) * (p.n_molecules as f64 * s.lambda_mc))
}

/// Non-Hermitian two-qutrit–resonator Hamiltonian in the frame rotating at
/// `ω_d` (ħ = 1):
///
/// `H = Σ_j [(ω_e − ω_d − iΓ_j/2)|e⟩_j⟨e| + ω_g|g⟩_j⟨g|]
///      + ½ Σ_j (Ω_j σ_j⁺ + g_j σ_j⁺ a + h.c.) + (ω_c − ω_d − iκ) a†a`
///
/// `|i⟩` sits at zero energy and has no matrix elements to anything else.
pub fn build_h_s2(p: &SchemeTwoParams, layout: &SpaceLayout) -> Result<DenseOperator> {
    p.check_decay()?;
    require_qutrit(layout, labels::SCQ1)?;
    require_qutrit(layout, labels::SCQ2)?;
    let dr = require_mode(layout, labels::RES)?;

    let a = embed(&ops::annihilation(dr), labels::RES, layout)?;
    let na = embed(&ops::number(dr), labels::RES, layout)?;
    let mut h = &na * Complex64::new(p.omega_c - p.omega_d, -p.kappa);

    for (label, gamma, rabi, g) in [
        (labels::SCQ1, p.gamma_1, p.rabi_1, p.g_1),
        (labels::SCQ2, p.gamma_2, p.rabi_2, p.g_2),
    ] {
        let pe = embed(&ops::projector(3, Level::E.index()), label, layout)?;
        let pg = embed(&ops::projector(3, Level::G.index()), label, layout)?;
        let sp = embed(&sigma_plus(), label, layout)?;
        let coupling = &(&sp * rabi) + &(&(&sp * &a) * g);
        h = &h + &(&pe * Complex64::new(p.omega_e - p.omega_d, -gamma / 2.0));
        h = &h + &(&pg * p.omega_g);
        h = &h + &(&(&coupling + &coupling.dagger()) * 0.5);
    }
    Ok(h)
}

/// Resonant microwave drive between two qutrit levels `(u, v)`:
/// `H = Ω (e^{−iφ}|v⟩⟨u| + e^{iφ}|u⟩⟨v|)`. Evolving for `t` gives
/// `|u⟩ → cos(Ωt)|u⟩ − i e^{−iφ} sin(Ωt)|v⟩`.
pub fn pulse_hamiltonian(
    pair: (Level, Level),
    rabi: f64,
    phase: f64,
    layout: &SpaceLayout,
    target: &str,
) -> Result<DenseOperator> {
    let (u, v) = pair;
    if u == v {
        return Err(Error::invalid("pair", "pulse levels must differ"));
    }
    require_qutrit(layout, target)?;
    let e = (-I * phase).exp();
    let m = ops::transition(3, v.index(), u.index()) * (e * rabi)
        + ops::transition(3, u.index(), v.index()) * (e.conj() * rabi);
    embed(&m, target, layout)
}
