mod common;

use common::*;
use proptest::prelude::*;
use qheat::baths::{bath_correlation, bose_occupation, fermi, polaron_factor, Table};
use qheat::hilbert::{c, partial_trace, qubit, relative_entropy, tensor_product, von_neumann_entropy};
use qheat::lindblad::{
    adjoint_dissipator, apply_dissipator, global_entropy_production, propagate, spohn_entropy_production,
    steady_state,
};
use qheat::{DensityMatrix, HilbertFactorization, LiouvillianModel, Operator, SpectralDensity, ThermalDissipator};
use std::f64::consts::PI;

fn check_state(rho: &DensityMatrix) {
    let op = rho.as_operator();
    assert!((op.trace().re - 1.0).abs() < 1e-10);
    assert!(op.hermiticity_error() < 1e-10);
    assert!(rho.eigenvalues()[0] > -1e-10);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn partial_trace_recovers_factors(seed in any::<u64>(), da in 1usize..4, db in 1usize..4) {
        let mut r = rng(seed);
        let a = random_state(&mut r, da);
        let b = random_state(&mut r, db);
        let f = HilbertFactorization::bipartite(da, db).unwrap();
        let ab = a.tensor(&b);
        let ra = partial_trace(&ab, &f, &[0]).unwrap();
        let rb = partial_trace(&ab, &f, &[1]).unwrap();
        prop_assert!((ra.as_operator() - a.as_operator()).max_abs() < 1e-12);
        prop_assert!((rb.as_operator() - b.as_operator()).max_abs() < 1e-12);
    }

    #[test]
    fn entropy_is_unitarily_invariant(seed in any::<u64>(), d in 2usize..6) {
        let mut r = rng(seed);
        let rho = random_state(&mut r, d);
        let u = random_unitary(&mut r, d);
        let s0 = von_neumann_entropy(&rho);
        let s1 = von_neumann_entropy(&rho.conjugate_by(&u).unwrap());
        prop_assert!((s0 - s1).abs() < 1e-10);
        check_state(&rho);
    }

    #[test]
    fn relative_entropy_nonnegative(seed in any::<u64>(), d in 2usize..5) {
        let mut r = rng(seed);
        let rho = random_state(&mut r, d);
        let sigma = random_state(&mut r, d);
        let s = relative_entropy(&rho, &sigma).unwrap();
        prop_assert!(s.value > 0.0);
        prop_assert!(relative_entropy(&rho, &rho).unwrap().value.abs() < 1e-10);
    }

    #[test]
    fn dissipator_duality(seed in any::<u64>(), beta in 0.1f64..5.0, gamma in 0.01f64..2.0) {
        let mut r = rng(seed);
        let d = 3;
        let a = Operator::new(random_matrix(&mut r, d)).unwrap();
        let diss = ThermalDissipator::new(a, gamma, beta, 1.3).unwrap();
        let rho = random_state(&mut r, d);
        let obs = random_hermitian(&mut r, d);
        let lhs = (obs.matrix() * apply_dissipator(&diss, &rho).unwrap().matrix()).trace();
        let rhs = (rho.as_operator().matrix() * adjoint_dissipator(&diss, &obs).unwrap().matrix()).trace();
        prop_assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn global_entropy_production_nonnegative(seed in any::<u64>(), beta in 0.05f64..5.0) {
        let mut r = rng(seed);
        let rho_s = random_state(&mut r, 2);
        let h_e = random_hermitian(&mut r, 2);
        let rho_e = qheat::hilbert::gibbs_state(&h_e, beta).unwrap();
        let u = random_unitary(&mut r, 4);
        let g = global_entropy_production(&u, &rho_s, &rho_e).unwrap();
        prop_assert!(g.sigma >= -1e-10);
    }

    #[test]
    fn occupations_decrease_with_energy(beta in 0.1f64..10.0, e in 0.01f64..5.0, de in 0.01f64..1.0) {
        prop_assert!(bose_occupation(e + de, beta).unwrap() < bose_occupation(e, beta).unwrap());
        prop_assert!(fermi(beta, e + de - 2.0) < fermi(beta, e - 2.0));
    }
}

fn tls_model(gamma: f64, beta: f64, omega: f64) -> LiouvillianModel {
    let h = qubit::excitation().scale(omega);
    let d = ThermalDissipator::new(qubit::sigma_minus(), gamma, beta, omega).unwrap();
    LiouvillianModel::new(h, vec![d]).unwrap()
}

fn two_bath_chain() -> LiouvillianModel {
    // two coupled qubits, each on its own bath
    let f = HilbertFactorization::bipartite(2, 2).unwrap();
    let n = qubit::excitation();
    let id = Operator::identity(2);
    let h = tensor_product(&n, &id).scale(1.0)
        + tensor_product(&id, &n).scale(1.0)
        + (tensor_product(&qubit::sigma_plus(), &qubit::sigma_minus())
            + tensor_product(&qubit::sigma_minus(), &qubit::sigma_plus()))
        .scale(0.05);
    let a1 = qheat::hilbert::embed(&qubit::sigma_minus(), 0, &f).unwrap();
    let a2 = qheat::hilbert::embed(&qubit::sigma_minus(), 1, &f).unwrap();
    LiouvillianModel::new(
        h,
        vec![
            ThermalDissipator::new(a1, 0.1, 0.5, 1.0).unwrap(),
            ThermalDissipator::new(a2, 0.1, 2.0, 1.0).unwrap(),
        ],
    )
    .unwrap()
}

#[test]
fn steady_state_matches_long_propagation() {
    for m in [tls_model(0.5, 1.3, 1.0), two_bath_chain()] {
        let ss = steady_state(&m).unwrap();
        check_state(&ss);
        let rho0 = DensityMatrix::maximally_mixed(m.dim());
        let p = propagate(&m, &rho0, 400.0, 0.05).unwrap();
        check_state(&p.state);
        assert!((p.state.as_operator() - ss.as_operator()).max_abs() < 1e-8);
        assert!(spohn_entropy_production(&m, &ss).unwrap() >= -1e-10);
    }
}

#[test]
fn propagation_checkpoints_stay_physical() {
    let m = two_bath_chain();
    let psi = [c(0.0, 0.0), c(0.6, 0.0), c(0.0, 0.8), c(0.0, 0.0)];
    let mut rho = DensityMatrix::pure(&psi).unwrap();
    for _ in 0..20 {
        rho = propagate(&m, &rho, 1.0, 0.05).unwrap().state;
        check_state(&rho);
        // Spohn's inequality holds along the transient as well
        assert!(spohn_entropy_production(&m, &rho).unwrap() >= -1e-10);
    }
}

#[test]
fn randomized_global_unitaries() {
    let mut r = rng(7);
    for k in 0..1000 {
        let ds = 2 + k % 2;
        let rho_s = random_state(&mut r, ds);
        let h_e = random_hermitian(&mut r, 2);
        let rho_e = qheat::hilbert::gibbs_state(&h_e, 0.5 + (k % 5) as f64).unwrap();
        let u = random_unitary(&mut r, 2 * ds);
        assert!(global_entropy_production(&u, &rho_s, &rho_e).unwrap().sigma >= -1e-10);
    }
}

#[test]
fn partial_swap_flux_is_beta_q_to_leading_order() {
    // S ⊗ E qubits; a weak partial swap moves little heat, so Φ ≈ βQ with Q
    // the energy given to the environment.
    let beta = 1.2;
    let h_e = qubit::excitation();
    let rho_e = qheat::hilbert::gibbs_state(&h_e, beta).unwrap();
    let rho_s = DensityMatrix::from_diagonal(&[0.2, 0.8]).unwrap();
    let swap = Operator::from_real_rows(
        4,
        &[1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0],
    )
    .unwrap();
    let theta: f64 = 0.02;
    let u = (Operator::identity(4).scale_c(c(theta.cos(), 0.0)) + swap.scale_c(c(0.0, -theta.sin()))).into_matrix();
    let u = Operator::new(u).unwrap();
    let g = global_entropy_production(&u, &rho_s, &rho_e).unwrap();
    let f = HilbertFactorization::bipartite(2, 2).unwrap();
    let joint = rho_s.tensor(&rho_e).conjugate_by(&u).unwrap();
    let e_t = partial_trace(&joint, &f, &[1]).unwrap();
    let q = e_t.population(1) - rho_e.population(1);
    assert!(q > 0.0);
    assert!((g.phi - beta * q).abs() < 0.05 * beta * q);
}

fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for k in 1..n {
        let w = if k % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + k as f64 * h);
    }
    s * h / 3.0
}

#[test]
fn ohmic_correlation_against_simpson() {
    let (gamma, wc, beta, t) = (1.0, 5.0, 1.0, 0.3);
    let j = |w: f64| gamma * w * (-w / wc).exp();
    let coth = |w: f64| if w == 0.0 { 0.0 } else { 1.0 / (0.5 * beta * w).tanh() };
    // J·coth → 2γ/β at ω → 0
    let re_f = |w: f64| if w == 0.0 { 2.0 * gamma / beta } else { j(w) * coth(w) * (w * t).cos() };
    let re = simpson(re_f, 0.0, 300.0, 300_000) / PI;
    let im = -simpson(|w| j(w) * (w * t).sin(), 0.0, 300.0, 300_000) / PI;
    let l = bath_correlation(&SpectralDensity::Ohmic { gamma, omega_c: wc }, beta, t).unwrap();
    assert!((l.re - re).abs() < 1e-6, "{} vs {}", l.re, re);
    assert!((l.im - im).abs() < 1e-6, "{} vs {}", l.im, im);
    let back = bath_correlation(&SpectralDensity::Ohmic { gamma, omega_c: wc }, beta, -t).unwrap();
    assert!((l - back.conj()).norm() < 1e-8);
}

#[test]
fn tabulated_polaron_against_segmentwise_simpson() {
    let beta = 2.0;
    let omega: Vec<f64> = (0..400).map(|k| 0.01 + 0.1 * k as f64).collect();
    let values: Vec<f64> = omega.iter().map(|w| w.powi(3) * (-w).exp()).collect();
    let table = Table::new(omega.clone(), values).unwrap();
    let mut exponent = 0.0;
    for w in omega.windows(2) {
        let g = |x: f64| table.eval(x) / (x * x) / (0.5 * beta * x).tanh();
        exponent += simpson(g, w[0], w[1], if w[0] < 1.0 { 20_000 } else { 200 });
    }
    let want = (-0.5 * exponent).exp();
    let got = polaron_factor(&SpectralDensity::Tabulated(table.clone()), beta).unwrap();
    assert!((got - want).abs() < 1e-8, "{got} vs {want}");
    assert!(got > 0.0 && got <= 1.0);
    let stronger = polaron_factor(&SpectralDensity::Tabulated(table.scaled(2.0).unwrap()), beta).unwrap();
    assert!(stronger < got);
}
