//! Built-in invariant suite behind `klm validate`.
//!
//! Random draws come from a ChaCha8 stream, so a given seed always checks
//! the same cases.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI, TAU};
use std::fmt::Write as _;

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use klm_core::analysis::{fidelity_closed_form, fidelity_simulated, sweep, SweepSpec};
use klm_core::evolve::{interaction_picture, jc_rotation, propagator, qutrit_pulse};
use klm_core::hilbert::ops;
use klm_core::model::{build_h_eff_s1, build_h_s2, collective_spin_ops, interaction_frame, labels};
use klm_core::protocol::cphase::gate_layout;
use klm_core::protocol::{
    cphase_ideal, compare_klm, scheme1_measure_feedback, scheme2_n_qubit, scheme2_trace, Engine,
    MeasurementChoice, SchemeOneRun, KLM_GATE_PHASE,
};
use klm_core::{
    commutator, embed, overlap_fidelity, tensor, Complex64, DenseOperator, Level, PulseAngles, SchemeOneParams,
    SchemeTwoParams, SpaceLayout, StateVector, Subsystem, TimingErrors,
};

pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

type Outcome = Result<(bool, String), klm_core::Error>;

fn within(worst: f64, tol: f64) -> (bool, String) {
    (worst <= tol, format!("worst {worst:.3e} (tol {tol:.0e})"))
}

fn random_complex(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

fn random_matrix(rng: &mut ChaCha8Rng, d: usize) -> DMatrix<Complex64> {
    DMatrix::from_fn(d, d, |_, _| random_complex(rng))
}

fn random_state(rng: &mut ChaCha8Rng, layout: SpaceLayout) -> Result<StateVector, klm_core::Error> {
    let v: Vec<Complex64> = (0..layout.dim()).map(|_| random_complex(rng)).collect();
    StateVector::from_slice(layout, &v)?.normalized()
}

fn random_angles(rng: &mut ChaCha8Rng) -> PulseAngles {
    PulseAngles {
        theta0: rng.random_range(0.0..TAU),
        theta2: rng.random_range(0.0..TAU),
        phi: rng.random_range(0.0..TAU),
        phi_prime: rng.random_range(0.0..TAU),
        gt1: rng.random_range(0.0..TAU),
        gt3: rng.random_range(0.0..TAU),
    }
}

fn single(label: &str, dim: usize) -> SpaceLayout {
    let sub = if dim == 3 {
        Subsystem::qutrit(label)
    } else {
        Subsystem::mode(label, dim - 1)
    };
    SpaceLayout::single(sub).expect("one subsystem")
}

fn op(label: &str, m: DMatrix<Complex64>) -> DenseOperator {
    DenseOperator::new(single(label, m.nrows()), m).expect("square matrix")
}

fn max_diff(a: &StateVector, b: &StateVector) -> f64 {
    (a.amplitudes() - b.amplitudes()).camax()
}

fn tensor_associative(rng: &mut ChaCha8Rng) -> Outcome {
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let a = op("a", random_matrix(rng, 2));
        let b = op("b", random_matrix(rng, 3));
        let c = op("c", random_matrix(rng, 4));
        let left: DenseOperator = tensor([&tensor::<DenseOperator, _>([&a, &b])?, &c])?;
        let flat: DenseOperator = tensor([&a, &b, &c])?;
        worst = worst.max(left.max_abs_diff(&flat)?);
    }
    Ok((worst == 0.0, format!("worst {worst:.3e} (exact)")))
}

fn embed_is_kronecker(rng: &mut ChaCha8Rng) -> Outcome {
    let layout = SpaceLayout::new(vec![
        Subsystem::mode("a", 1),
        Subsystem::qutrit("q"),
        Subsystem::mode("b", 2),
    ])?;
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let m = random_matrix(rng, 3);
        let explicit = ops::identity(2).kronecker(&m).kronecker(&ops::identity(3));
        let e = embed(&m, "q", &layout)?;
        worst = worst.max((e.matrix() - explicit).camax());
    }
    Ok((worst == 0.0, format!("worst {worst:.3e} (exact)")))
}

fn fidelity_unitary_invariant(rng: &mut ChaCha8Rng) -> Outcome {
    let layout = SpaceLayout::new(vec![Subsystem::qutrit("q"), Subsystem::mode("m", 2)])?;
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let m = random_matrix(rng, layout.dim());
        let h = DenseOperator::new(layout.clone(), &m + m.adjoint())?;
        let u = propagator(&h, rng.random_range(0.0..3.0))?;
        let psi = random_state(rng, layout.clone())?;
        let phi = random_state(rng, layout.clone())?;
        let before = overlap_fidelity(&psi, &phi)?;
        let after = overlap_fidelity(&u.apply(&psi)?, &u.apply(&phi)?)?;
        worst = worst.max((before - after).abs());
    }
    Ok(within(worst, 1e-10))
}

fn dicke_commutator(_: &mut ChaCha8Rng) -> Outcome {
    let mut worst = 0.0f64;
    for (n, cutoff) in [(1u64, 1usize), (4, 4), (10, 3), (10_000, 3)] {
        let ops = collective_spin_ops(n, cutoff)?;
        let comm = commutator(&ops.b, &ops.b_dagger)?;
        let expected = DenseOperator::identity(ops.n_b.layout().clone()) - &ops.n_b * (2.0 / n as f64);
        // The top row is cut off by the truncation unless cutoff = N.
        let rows = if cutoff as u64 == n { cutoff + 1 } else { cutoff };
        for r in 0..rows {
            for c in 0..=cutoff {
                worst = worst.max((comm.entry(r, c) - expected.entry(r, c)).norm());
            }
        }
    }
    Ok(within(worst, 1e-10))
}

fn random_s1_params(rng: &mut ChaCha8Rng) -> SchemeOneParams {
    let mhz = |x: f64| TAU * 1e6 * x;
    let omega_c = mhz(rng.random_range(4000.0..6000.0));
    let sign = |rng: &mut ChaCha8Rng| if rng.random_bool(0.5) { 1.0 } else { -1.0 };
    SchemeOneParams {
        omega_s: omega_c + sign(rng) * mhz(rng.random_range(100.0..1000.0)),
        omega_d: omega_c + sign(rng) * mhz(rng.random_range(100.0..1000.0)),
        omega_m: omega_c + sign(rng) * mhz(rng.random_range(100.0..1000.0)),
        omega_c,
        rabi: mhz(rng.random_range(1.0..100.0)),
        g_s: mhz(rng.random_range(1.0..100.0)),
        g_m: mhz(rng.random_range(1.0..100.0)),
        n_molecules: rng.random_range(1..1_000_000),
    }
}

fn stark_recompute(rng: &mut ChaCha8Rng) -> Outcome {
    let rel = |a: f64, b: f64| if b == 0.0 { a.abs() } else { ((a - b) / b).abs() };
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let p = random_s1_params(rng);
        let s = p.stark_shifts()?;
        let ds = p.omega_s - p.omega_c;
        let dm = p.omega_m - p.omega_c;
        let dd = p.omega_s - p.omega_d;
        let sm = p.g_m * p.g_s / 2.0 * (1.0 / dm + 1.0 / ds);
        for (got, want) in [
            (s.lambda_sd, p.rabi * p.rabi / dd),
            (s.lambda_sc, p.g_s * p.g_s / ds),
            (s.lambda_mc, p.g_m * p.g_m / dm),
            (s.lambda_sm, sm),
            (s.g_eff, (p.n_molecules as f64).sqrt() * sm),
        ] {
            worst = worst.max(rel(got, want));
        }
    }
    Ok(within(worst, 1e-12))
}

fn sqrt_n_scaling(rng: &mut ChaCha8Rng) -> Outcome {
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let p = random_s1_params(rng);
        let doubled = SchemeOneParams {
            n_molecules: 2 * p.n_molecules,
            ..p.clone()
        };
        worst = worst.max((doubled.g_eff()? / p.g_eff()? - 2f64.sqrt()).abs());
    }
    Ok(within(worst, 1e-15))
}

fn s1_layout(cutoff: usize) -> Result<SpaceLayout, klm_core::Error> {
    SpaceLayout::new(vec![Subsystem::qutrit(labels::SCQ), Subsystem::mode(labels::MODE1, cutoff)])
}

fn jc_blocks(_: &mut ChaCha8Rng) -> Outcome {
    let p = SchemeOneParams::reference_device();
    let g = p.g_eff()?;
    let layout = s1_layout(4)?;
    let h = build_h_eff_s1(&p, &layout, labels::MODE1)?;
    let mut worst = 0.0f64;
    for n in 0..4 {
        let e = layout.encode(&[Level::E.index(), n])?;
        let gg = layout.encode(&[Level::G.index(), n + 1])?;
        let want = g * ((n + 1) as f64).sqrt();
        worst = worst.max((h.entry(e, gg) - want).norm() / want.abs());
        worst = worst.max((h.entry(gg, e) - want).norm() / want.abs());
        // Nothing else couples into the block.
        for k in 0..layout.dim() {
            if k != e && k != gg {
                worst = worst.max(h.entry(k, e).norm().max(h.entry(k, gg).norm()) / want.abs());
            }
        }
    }
    Ok(within(worst, 1e-12))
}

fn s2_excitation_conserved(_: &mut ChaCha8Rng) -> Outcome {
    let p = SchemeTwoParams {
        rabi_1: 0.0,
        rabi_2: 0.0,
        gamma_1: 0.0,
        gamma_2: 0.0,
        kappa: 0.0,
        ..SchemeTwoParams::reference_device()
    };
    let layout = gate_layout(3)?;
    let h = build_h_s2(&p, &layout)?;
    let pe = ops::projector(3, Level::E.index());
    let n_exc = embed(&pe, labels::SCQ1, &layout)?
        + embed(&pe, labels::SCQ2, &layout)?
        + embed(&ops::number(4), labels::RES, &layout)?;
    let worst = commutator(&h, &n_exc)?.max_abs() / h.max_abs();
    Ok(within(worst, 1e-12))
}

fn jc_composition(rng: &mut ChaCha8Rng) -> Outcome {
    let layout = s1_layout(3)?;
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let g = rng.random_range(0.1..3.0);
        let (t, s) = (rng.random_range(0.0..5.0), rng.random_range(0.0..5.0));
        let a = jc_rotation(g, t, &layout, labels::SCQ, labels::MODE1)?;
        let b = jc_rotation(g, s, &layout, labels::SCQ, labels::MODE1)?;
        let ab = jc_rotation(g, t + s, &layout, labels::SCQ, labels::MODE1)?;
        worst = worst.max((a.then(&b)?.matrix() - ab.matrix()).camax());
    }
    Ok(within(worst, 1e-10))
}

fn jc_is_interaction_picture(rng: &mut ChaCha8Rng) -> Outcome {
    let p = SchemeOneParams::reference_device();
    let g = p.g_eff()?;
    let layout = s1_layout(3)?;
    let h = build_h_eff_s1(&p, &layout, labels::MODE1)?;
    let h0 = interaction_frame(&p, &layout, labels::MODE1)?;
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let t = rng.random_range(0.0..3.0) / g;
        let numeric = interaction_picture(&h, &h0, t)?;
        let closed = jc_rotation(g, t, &layout, labels::SCQ, labels::MODE1)?;
        worst = worst.max((numeric.matrix() - closed.matrix()).camax());
    }
    Ok(within(worst, 1e-9))
}

fn pulses_unitary(rng: &mut ChaCha8Rng) -> Outcome {
    let layout = s1_layout(2)?;
    let pairs = [(Level::I, Level::G), (Level::I, Level::E), (Level::G, Level::E), (Level::E, Level::I)];
    let mut worst = 0.0f64;
    for _ in 0..25 {
        for pair in pairs {
            let u = qutrit_pulse(pair, rng.random_range(-TAU..TAU), rng.random_range(-TAU..TAU), &layout, labels::SCQ)?;
            worst = worst.max(u.unitarity_defect());
        }
    }
    Ok(within(worst, 1e-12))
}

fn lossy_norm_non_increasing(rng: &mut ChaCha8Rng) -> Outcome {
    let p = SchemeTwoParams {
        gamma_1: TAU * 1e6,
        kappa: TAU * 2e6,
        ..SchemeTwoParams::reference_device()
    };
    let layout = gate_layout(2)?;
    let h = build_h_s2(&p, &layout)?;
    let psi = random_state(rng, layout)?;
    let mut times: Vec<f64> = (0..100).map(|_| rng.random_range(0.0..1e-6)).collect();
    times.sort_by(f64::total_cmp);
    let mut prev = 1.0 + 1e-12;
    let mut violations = 0;
    for t in times {
        let n = propagator(&h, t)?.apply(&psi)?.norm_sqr();
        if n > prev + 1e-12 {
            violations += 1;
        }
        prev = n;
    }
    Ok((violations == 0, format!("{violations} increases over 100 times")))
}

fn fidelity_oracle(rng: &mut ChaCha8Rng) -> Outcome {
    let p = SchemeOneParams::reference_device();
    let mut worst = 0.0f64;
    for _ in 0..50 {
        // The closed form assumes exact exchange areas.
        let angles = PulseAngles {
            gt1: FRAC_PI_2,
            gt3: FRAC_PI_2,
            ..random_angles(rng)
        };
        let mut etas = TimingErrors::zero();
        for slot in 0..4 {
            etas.set(slot, rng.random_range(-0.2..0.2));
        }
        let sim = fidelity_simulated(&etas, &angles, &p)?;
        worst = worst.max((sim - fidelity_closed_form(&etas, &angles)).abs());
    }
    Ok(within(worst, 1e-9))
}

fn exchange_surface(_: &mut ChaCha8Rng) -> Outcome {
    // With ideal angles F(η1, η3) = ((1 + s1 + s1·s3)/3)², s = sin(π/2·(1+η)).
    let mut worst = 0.0f64;
    for i in 0..20 {
        for j in 0..20 {
            let (a, b) = (i as f64 * 0.01, j as f64 * 0.01);
            let etas = TimingErrors {
                eta_1: a,
                eta_3: b,
                ..TimingErrors::zero()
            };
            let s1 = (FRAC_PI_2 * (1.0 + a)).sin();
            let s3 = (FRAC_PI_2 * (1.0 + b)).sin();
            let want = ((1.0 + s1 + s1 * s3) / 3.0).powi(2);
            worst = worst.max((fidelity_closed_form(&etas, &PulseAngles::ideal()) - want).abs());
        }
    }
    Ok(within(worst, 1e-12))
}

fn fidelity_bounded(_: &mut ChaCha8Rng) -> Outcome {
    let mut top = f64::NEG_INFINITY;
    for spec in [SweepSpec::exact_pulses(), SweepSpec::perturbed_pulses()] {
        let grid = sweep(&spec)?;
        top = grid.results.iter().copied().fold(top, f64::max);
    }
    Ok((top <= 1.0 + 1e-12, format!("max {top:.15}")))
}

fn engines_agree(rng: &mut ChaCha8Rng) -> Outcome {
    let mut worst = 0.0f64;
    for _ in 0..6 {
        let mut run = SchemeOneRun::new(SchemeOneParams::reference_device());
        run.angles = random_angles(rng);
        let closed = run.run()?;
        run.engine = Engine::EffectiveNumeric;
        let numeric = run.run()?;
        worst = worst.max(1.0 - overlap_fidelity(closed.final_state(), numeric.final_state())?);
    }
    Ok(within(worst, 1e-8))
}

fn measurement_deterministic(rng: &mut ChaCha8Rng) -> Outcome {
    let mut worst = 0.0f64;
    let mut compared = 0;
    for _ in 0..20 {
        let mut run = SchemeOneRun::new(SchemeOneParams::reference_device());
        run.angles = PulseAngles {
            gt1: FRAC_PI_2,
            gt3: FRAC_PI_2,
            ..random_angles(rng)
        };
        let state = run.run()?;
        let g = scheme1_measure_feedback(state.final_state(), MeasurementChoice::Fixed(Level::G));
        let e = scheme1_measure_feedback(state.final_state(), MeasurementChoice::Fixed(Level::E));
        if let (Ok(g), Ok(e)) = (g, e) {
            if g.probability > 1e-6 && e.probability > 1e-6 {
                worst = worst.max(1.0 - overlap_fidelity(&g.klm_state, &e.klm_state)?);
                compared += 1;
            }
        }
    }
    let (ok, detail) = within(worst, 1e-10);
    Ok((ok && compared > 0, format!("{detail}, {compared} states")))
}

fn single_excitation(rng: &mut ChaCha8Rng) -> Outcome {
    let mut worst = 0.0f64;
    for _ in 0..4 {
        let mut run = SchemeOneRun::new(SchemeOneParams::reference_device());
        run.angles = random_angles(rng);
        run.engine = Engine::EffectiveNumeric;
        let record = run.run()?;
        for state in record.states() {
            for mode in [labels::MODE1, labels::MODE2] {
                let dim = state.layout().subsystem(mode)?.dim;
                for n in 2..dim {
                    worst = worst.max(state.population(mode, n)?);
                }
            }
        }
    }
    Ok(within(worst, 1e-10))
}

fn cphase_composes(rng: &mut ChaCha8Rng) -> Outcome {
    let layout = gate_layout(1)?;
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let (a, b) = (rng.random_range(-TAU..TAU), rng.random_range(-TAU..TAU));
        let ua = cphase_ideal(a, &layout, labels::SCQ1, labels::SCQ2)?;
        let ub = cphase_ideal(b, &layout, labels::SCQ1, labels::SCQ2)?;
        let uab = cphase_ideal(a + b, &layout, labels::SCQ1, labels::SCQ2)?;
        worst = worst.max((ua.then(&ub)?.matrix() - uab.matrix()).camax());
    }
    Ok(within(worst, 1e-14))
}

fn recursion_integrity(_: &mut ChaCha8Rng) -> Outcome {
    let mut worst = 0.0f64;
    for n in 2..=5 {
        let stages = scheme2_trace(n, KLM_GATE_PHASE)?;
        let stage = stages.last().expect("n >= 2");
        let fresh = StateVector::from_slice(
            SpaceLayout::single(Subsystem::qutrit(labels::scq(n)))?,
            &[Complex64::new(FRAC_1_SQRT_2, 0.0), Complex64::new(FRAC_1_SQRT_2, 0.0), Complex64::new(0.0, 0.0)],
        )?;
        let previous = if n == 2 {
            StateVector::from_slice(
                SpaceLayout::single(Subsystem::qutrit(labels::scq(1)))?,
                &[Complex64::new(FRAC_1_SQRT_2, 0.0), Complex64::new(FRAC_1_SQRT_2, 0.0), Complex64::new(0.0, 0.0)],
            )?
        } else {
            scheme2_n_qubit(n - 1)?
        };
        let expected: StateVector = tensor([&previous, &fresh])?;
        worst = worst.max(max_diff(&stage.after_superposition, &expected));
    }
    Ok(within(worst, 1e-12))
}

fn closed_form_matches(_: &mut ChaCha8Rng) -> Outcome {
    let mut worst = 0.0f64;
    for n in 2..=5 {
        let c = compare_klm(n)?;
        worst = worst.max((1.0 - c.overlap).abs()).max((c.closed_form_norm - 1.0).abs());
    }
    Ok(within(worst, 1e-9))
}

fn reference_anchors(_: &mut ChaCha8Rng) -> Outcome {
    let exchange = TimingErrors {
        eta_1: 0.1,
        eta_3: 0.1,
        ..TimingErrors::zero()
    };
    let a = fidelity_closed_form(&exchange, &PulseAngles::ideal());
    let b = fidelity_closed_form(&TimingErrors::uniform(0.1), &PulseAngles::ideal());
    let worst = (a - 0.9759).abs().max((b - 0.9603).abs());
    Ok((worst <= 1e-3, format!("{a:.6} / {b:.6} (expected 0.9759 / 0.9603, tol 1e-3)")))
}

fn cphase_gate_phase_sign(_: &mut ChaCha8Rng) -> Outcome {
    let layout = gate_layout(1)?;
    let u = cphase_ideal(KLM_GATE_PHASE, &layout, labels::SCQ1, labels::SCQ2)?;
    let gg = layout.encode(&[Level::G.index(), Level::G.index(), 0])?;
    let worst = (u.matrix()[(gg, gg)] - Complex64::from_polar(1.0, -1.5 * PI)).norm();
    Ok(within(worst, 1e-15))
}

const CHECKS: [(&str, fn(&mut ChaCha8Rng) -> Outcome); 23] = [
    ("tensor product is associative", tensor_associative),
    ("embed equals explicit Kronecker padding", embed_is_kronecker),
    ("overlap fidelity is unitarily invariant", fidelity_unitary_invariant),
    ("Dicke commutator [b, b+] = I - 2n/N", dicke_commutator),
    ("Stark shifts match their formulas", stark_recompute),
    ("g_eff scales as sqrt(N)", sqrt_n_scaling),
    ("reduced Hamiltonian has JC blocks", jc_blocks),
    ("lossless gate Hamiltonian conserves excitations", s2_excitation_conserved),
    ("JC rotations compose", jc_composition),
    ("JC rotation equals interaction-picture evolution", jc_is_interaction_picture),
    ("qutrit pulses are unitary", pulses_unitary),
    ("lossy norm never increases", lossy_norm_non_increasing),
    ("simulated fidelity equals closed form", fidelity_oracle),
    ("exchange-error surface has its reduced form", exchange_surface),
    ("fidelity never exceeds 1 on the default grids", fidelity_bounded),
    ("closed-form and numeric engines agree", engines_agree),
    ("both measurement outcomes give one state", measurement_deterministic),
    ("modes never hold two excitations", single_excitation),
    ("ideal cphase gates compose", cphase_composes),
    ("register growth keeps earlier qubits intact", recursion_integrity),
    ("protocol matches the KLM closed form (n = 2..5)", closed_form_matches),
    ("fidelity anchors at eta = 0.1", reference_anchors),
    ("cphase applies its phase on |gg>", cphase_gate_phase_sign),
];

pub fn run_suite(seed: u64) -> Vec<Check> {
    CHECKS
        .iter()
        .enumerate()
        .map(|(k, (name, f))| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(k as u64));
            let (passed, detail) = match f(&mut rng) {
                Ok(r) => r,
                Err(e) => (false, format!("error: {e}")),
            };
            Check { name, passed, detail }
        })
        .collect()
}

pub fn table(checks: &[Check]) -> String {
    let width = checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
    let mut out = String::new();
    for c in checks {
        let verdict = if c.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "{verdict}  {:<width$}  {}", c.name, c.detail);
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    let _ = writeln!(out, "{} passed, {failed} failed", checks.len() - failed);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_passes() {
        let checks = run_suite(0);
        let failed: Vec<_> = checks.iter().filter(|c| !c.passed).map(|c| (c.name, &c.detail)).collect();
        assert!(failed.is_empty(), "{failed:?}");
        assert!(checks.iter().any(|c| c.name.starts_with("Dicke")));
        assert!(checks.iter().any(|c| c.name == "simulated fidelity equals closed form"));
    }
}
