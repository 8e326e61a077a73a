use std::f64::consts::{FRAC_PI_2, TAU};

use approx::assert_relative_eq;
use nalgebra::DMatrix;
use proptest::prelude::*;

use klm_core::analysis::{fidelity_closed_form, fidelity_simulated};
use klm_core::evolve::{jc_rotation, propagator, qutrit_pulse};
use klm_core::hilbert::ops;
use klm_core::model::{build_h_eff_s1, labels};
use klm_core::protocol::{
    cphase_ideal, scheme1_measure_feedback, Engine, MeasurementChoice, SchemeOneRun, TimingErrors,
};
use klm_core::units::mhz_2pi;
use klm_core::{
    embed, overlap_fidelity, tensor, Complex64, DenseOperator, Level, PulseAngles, SchemeOneParams, SpaceLayout,
    StateVector, Subsystem,
};

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        ..ProptestConfig::default()
    }
}

fn complex_entries(n: usize) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), n).prop_map(|v| v.into_iter().map(|(a, b)| Complex64::new(a, b)).collect())
}

fn operator(label: &'static str, dim: usize) -> impl Strategy<Value = DenseOperator> {
    complex_entries(dim * dim).prop_map(move |v| {
        let sub = if dim == 3 {
            Subsystem::qutrit(label)
        } else {
            Subsystem::mode(label, dim - 1)
        };
        DenseOperator::new(SpaceLayout::single(sub).unwrap(), DMatrix::from_vec(dim, dim, v)).unwrap()
    })
}

fn hermitian(layout: SpaceLayout) -> impl Strategy<Value = DenseOperator> {
    let d = layout.dim();
    complex_entries(d * d).prop_map(move |v| {
        let m = DMatrix::from_vec(d, d, v);
        DenseOperator::new(layout.clone(), &m + m.adjoint()).unwrap()
    })
}

fn state(layout: SpaceLayout) -> impl Strategy<Value = StateVector> {
    complex_entries(layout.dim()).prop_filter_map("nonzero", move |v| {
        StateVector::from_slice(layout.clone(), &v).ok()?.normalized().ok()
    })
}

fn angle() -> impl Strategy<Value = f64> {
    0.0..TAU
}

fn angles() -> impl Strategy<Value = PulseAngles> {
    (angle(), angle(), angle(), angle()).prop_map(|(theta0, theta2, phi, phi_prime)| PulseAngles {
        theta0,
        theta2,
        phi,
        phi_prime,
        ..PulseAngles::ideal()
    })
}

fn etas(range: f64) -> impl Strategy<Value = TimingErrors> {
    (-range..range, -range..range, -range..range, -range..range).prop_map(|(eta_0, eta_1, eta_2, eta_3)| TimingErrors {
        eta_0,
        eta_1,
        eta_2,
        eta_3,
    })
}

fn scheme_one_params() -> impl Strategy<Value = SchemeOneParams> {
    (10.0..200.0f64, 5.0..50.0f64, 300.0..2000.0f64, 200.0..1500.0f64, 1u64..100_000, -1.0..1.0f64, 0.0..40.0f64).prop_map(
        |(gs, gm, ds, dm, n, ds_sign, rabi)| {
            let omega_c = mhz_2pi(6000.0);
            let sign = if ds_sign < 0.0 { -1.0 } else { 1.0 };
            SchemeOneParams {
                omega_s: omega_c + sign * mhz_2pi(ds),
                omega_d: omega_c + sign * mhz_2pi(ds) - mhz_2pi(900.0),
                omega_m: omega_c + mhz_2pi(dm),
                omega_c,
                rabi: mhz_2pi(rabi),
                g_s: mhz_2pi(gs),
                g_m: mhz_2pi(gm),
                n_molecules: n,
            }
        },
    )
}

fn mode_layout(cutoff: usize) -> SpaceLayout {
    SpaceLayout::new(vec![Subsystem::qutrit(labels::SCQ), Subsystem::mode(labels::MODE1, cutoff)]).unwrap()
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn tensor_is_associative(a in operator("a", 2), b in operator("b", 3), c in operator("c", 2)) {
        let left: DenseOperator = tensor([&tensor::<DenseOperator, _>([&a, &b]).unwrap(), &c]).unwrap();
        let flat: DenseOperator = tensor([&a, &b, &c]).unwrap();
        prop_assert_eq!(left, flat);
    }

    #[test]
    fn embed_matches_explicit_kronecker(op in operator("b", 3)) {
        let a = DenseOperator::identity(SpaceLayout::single(Subsystem::qubit("a")).unwrap());
        let c = DenseOperator::identity(SpaceLayout::single(Subsystem::mode("c", 3)).unwrap());
        let explicit: DenseOperator = tensor([&a, &op, &c]).unwrap();
        let embedded = embed(op.matrix(), "b", explicit.layout()).unwrap();
        prop_assert_eq!(embedded, explicit);
    }

    #[test]
    fn fidelity_is_unitarily_invariant(
        (psi, phi, h) in Just(mode_layout(2)).prop_flat_map(|l| (state(l.clone()), state(l.clone()), hermitian(l))),
        t in 0.0..3.0f64,
    ) {
        let u = propagator(&h, t).unwrap();
        let before = overlap_fidelity(&psi, &phi).unwrap();
        let after = overlap_fidelity(&u.apply(&psi).unwrap(), &u.apply(&phi).unwrap()).unwrap();
        prop_assert!((before - after).abs() < 1e-10);
        prop_assert!((overlap_fidelity(&phi, &psi).unwrap() - before).abs() < 1e-15);
    }

    #[test]
    fn qutrit_pulses_are_unitary(pair in 0usize..3, theta in -10.0..10.0f64, phase in angle()) {
        let pairs = [(Level::I, Level::G), (Level::I, Level::E), (Level::G, Level::E)];
        let l = mode_layout(2);
        let u = qutrit_pulse(pairs[pair], theta, phase, &l, labels::SCQ).unwrap();
        prop_assert!(u.unitarity_defect() < 1e-12);
    }

    #[test]
    fn exchange_rotations_compose(g in 1e8..2e9f64, t in 0.0..5e-9f64, s in 0.0..5e-9f64) {
        let l = mode_layout(3);
        let a = jc_rotation(g, t, &l, labels::SCQ, labels::MODE1).unwrap();
        let b = jc_rotation(g, s, &l, labels::SCQ, labels::MODE1).unwrap();
        let ab = jc_rotation(g, t + s, &l, labels::SCQ, labels::MODE1).unwrap();
        prop_assert!(a.then(&b).unwrap().operator().max_abs_diff(ab.operator()).unwrap() < 1e-10);
    }

    #[test]
    fn ideal_phase_gates_add(p1 in -10.0..10.0f64, p2 in -10.0..10.0f64) {
        let l = SpaceLayout::new(vec![Subsystem::qutrit("q1"), Subsystem::qutrit("q2")]).unwrap();
        let a = cphase_ideal(p1, &l, "q1", "q2").unwrap();
        let b = cphase_ideal(p2, &l, "q1", "q2").unwrap();
        let ab = cphase_ideal(p1 + p2, &l, "q1", "q2").unwrap();
        prop_assert!(a.then(&b).unwrap().operator().max_abs_diff(ab.operator()).unwrap() < 1e-14);
        prop_assert!(ab.operator().is_diagonal());
    }
}

proptest! {
    #![proptest_config(config(100))]

    #[test]
    fn stark_shifts_recompute(p in scheme_one_params()) {
        let s = p.stark_shifts().unwrap();
        let (ds, dm, dd) = (p.omega_s - p.omega_c, p.omega_m - p.omega_c, p.omega_s - p.omega_d);
        let lambda_sm = (p.g_m * p.g_s / 2.0) * (1.0 / dm + 1.0 / ds);
        assert_relative_eq!(s.lambda_sd, p.rabi.powi(2) / dd, max_relative = 1e-12);
        assert_relative_eq!(s.lambda_sc, p.g_s.powi(2) / ds, max_relative = 1e-12);
        assert_relative_eq!(s.lambda_mc, p.g_m.powi(2) / dm, max_relative = 1e-12);
        assert_relative_eq!(s.lambda_sm, lambda_sm, max_relative = 1e-12);
        assert_relative_eq!(s.g_eff, (p.n_molecules as f64).sqrt() * lambda_sm, max_relative = 1e-12);
    }

    #[test]
    fn coupling_scales_as_root_n(p in scheme_one_params()) {
        let doubled = SchemeOneParams { n_molecules: 2 * p.n_molecules, ..p.clone() };
        assert_relative_eq!(doubled.g_eff().unwrap(), 2f64.sqrt() * p.g_eff().unwrap(), max_relative = 1e-15);
    }

    #[test]
    fn reduced_hamiltonian_has_exchange_blocks(p in scheme_one_params()) {
        let l = mode_layout(3);
        let h = build_h_eff_s1(&p, &l, labels::MODE1).unwrap();
        let g = p.g_eff().unwrap();
        for n in 0..3 {
            let e = l.encode(&[Level::E.index(), n]).unwrap();
            let gn = l.encode(&[Level::G.index(), n + 1]).unwrap();
            let want = g * ((n + 1) as f64).sqrt();
            prop_assert!((h.entry(e, gn) - Complex64::new(want, 0.0)).norm() <= 1e-12 * want.abs());
            prop_assert!((h.entry(gn, e) - Complex64::new(want, 0.0)).norm() <= 1e-12 * want.abs());
        }
    }

    #[test]
    fn simulated_fidelity_equals_formula(a in angles(), e in etas(0.2)) {
        let p = SchemeOneParams::reference_device();
        let sim = fidelity_simulated(&e, &a, &p).unwrap();
        let formula = fidelity_closed_form(&e, &a);
        prop_assert!((sim - formula).abs() < 1e-9, "{} vs {}", sim, formula);
        prop_assert!(formula <= 1.0 + 1e-15 && formula >= 0.0);
    }
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn engines_agree_for_arbitrary_angles(
        a in angles(),
        gt1 in 0.0..TAU,
        gt3 in 0.0..TAU,
        e in etas(0.3),
    ) {
        let run = |engine| SchemeOneRun {
            angles: PulseAngles { gt1, gt3, ..a },
            etas: e,
            engine,
            ..SchemeOneRun::new(SchemeOneParams::reference_device())
        }
        .run()
        .unwrap();
        let cf = run(Engine::ClosedForm);
        let num = run(Engine::EffectiveNumeric);
        prop_assert!(1.0 - overlap_fidelity(cf.final_state(), num.final_state()).unwrap() < 1e-8);
    }

    #[test]
    fn single_excitation_per_mode(a in angles(), e in etas(0.3)) {
        let r = SchemeOneRun {
            angles: a,
            etas: e,
            engine: Engine::EffectiveNumeric,
            ..SchemeOneRun::new(SchemeOneParams::reference_device())
        }
        .run()
        .unwrap();
        for s in r.states() {
            for mode in [labels::MODE1, labels::MODE2] {
                let high: f64 = (2..=3).map(|n| s.population(mode, n).unwrap()).sum();
                prop_assert!(high < 1e-10);
            }
        }
    }

    #[test]
    fn measurement_outcomes_agree(a in angles()) {
        let r = SchemeOneRun::new(SchemeOneParams::reference_device());
        let r = SchemeOneRun { angles: a, ..r }.run().unwrap();
        let s = r.final_state();
        let results: Vec<_> = [Level::G, Level::E]
            .into_iter()
            .filter_map(|l| scheme1_measure_feedback(s, MeasurementChoice::Fixed(l)).ok())
            .collect();
        if results.len() == 2 {
            let f = overlap_fidelity(&results[0].klm_state, &results[1].klm_state).unwrap();
            prop_assert!((f - 1.0).abs() < 1e-10);
            prop_assert!((results[0].p_g - 0.5).abs() < 1e-12);
        }
    }
}

/// With ideal angles `F = ((1 + s1 + s1·s3)/3)²`, `s_k = sin(π/2·(1 + η_k))`.
/// The first exchange feeds two brackets and the second only one, so the
/// surface is not symmetric under `η1 ↔ η3`.
#[test]
fn exchange_error_surface_on_grid() {
    let a = PulseAngles::ideal();
    let grid: Vec<f64> = (0..20).map(|k| -0.2 + 0.4 * k as f64 / 19.0).collect();
    let f = |x: f64, y: f64| {
        fidelity_closed_form(
            &TimingErrors {
                eta_1: x,
                eta_3: y,
                ..TimingErrors::zero()
            },
            &a,
        )
    };
    let s = |eta: f64| (FRAC_PI_2 * (1.0 + eta)).sin();
    for &x in &grid {
        for &y in &grid {
            let oracle = ((1.0 + s(x) + s(x) * s(y)) / 3.0).powi(2);
            assert!((f(x, y) - oracle).abs() < 1e-12);
            assert!(f(x, y) <= 1.0);
            if x.abs() > y.abs() + 1e-9 {
                assert!(f(x, y) < f(y, x));
            }
        }
    }
}

#[test]
fn exchange_error_sign_symmetry_at_quarter_period() {
    let a = PulseAngles::ideal();
    assert_eq!(a.gt1, FRAC_PI_2);
    for eta in [0.05, 0.1, 0.3] {
        let plus = TimingErrors { eta_1: eta, ..TimingErrors::zero() };
        let minus = TimingErrors { eta_1: -eta, ..TimingErrors::zero() };
        assert!((fidelity_closed_form(&plus, &a) - fidelity_closed_form(&minus, &a)).abs() < 1e-15);
    }
}

#[test]
fn ladder_embedding_frozen_example() {
    let l = SpaceLayout::new(vec![Subsystem::qutrit("scq"), Subsystem::mode("res", 3)]).unwrap();
    let a = embed(&ops::annihilation(4), "res", &l).unwrap();
    let psi = StateVector::basis(l.clone(), &[2, 3]).unwrap();
    let out = psi.apply(&a).unwrap();
    assert!((out.amplitude(&[2, 2]).unwrap() - Complex64::new(3f64.sqrt(), 0.0)).norm() < 1e-15);
}
