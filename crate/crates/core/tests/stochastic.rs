mod common;

use common::*;
use nalgebra::DMatrix;
use proptest::prelude::*;
use qheat::cycles::{otto_quasistatic, Medium};
use qheat::fluctuations::{
    biased_hopping_statistics, cycle_joint_distribution, efficiency_distribution, eta2_bound_check,
    thermal_weights, tpm_work_distribution, tur_check, StrokeKind,
};
use qheat::hilbert::{c, expectation_real, gibbs_state, qubit};
use qheat::nonthermal::{
    ergotropy, generalized_carnot, phaseonium_efficiency, phaseonium_photon_fixed_point, squeezed_eff_max_power,
    squeezed_otto_cycle, squeezed_otto_efficiency, PhaseoniumSpec, SqueezedOttoSpec,
};
use qheat::{DensityMatrix, Operator, OutcomeDistribution, StrokeProtocol};

fn otto(levels_c: &[f64], levels_h: &[f64], beta_c: f64, beta_h: f64) -> Vec<StrokeProtocol> {
    vec![
        StrokeProtocol::adiabatic(levels_c.to_vec(), levels_h.to_vec()).unwrap(),
        StrokeProtocol::thermal(levels_h.to_vec(), beta_h).unwrap(),
        StrokeProtocol::adiabatic(levels_h.to_vec(), levels_c.to_vec()).unwrap(),
        StrokeProtocol::thermal(levels_c.to_vec(), beta_c).unwrap(),
    ]
}

#[test]
fn joint_mean_work_matches_closed_form_otto() {
    for &(dc, dh, t_h, t_c) in &[(1.0, 3.0, 10.0, 2.0), (1.0, 1.5, 2.0, 1.0), (0.7, 2.0, 1.0, 0.1)] {
        let j = cycle_joint_distribution(1.0 / t_c, &otto(&[0.0, dc], &[0.0, dh], 1.0 / t_c, 1.0 / t_h)).unwrap();
        assert!((j.total_probability() - 1.0).abs() < 1e-12);
        let w = j.total_work().unwrap();
        assert!((w.total_probability() - 1.0).abs() < 1e-12);
        let closed = otto_quasistatic(Medium::Tls, dc, dh, t_h, t_c).unwrap();
        assert!((w.mean() - closed.work).abs() < 1e-10);
        assert!((j.mean(1) - closed.q_h).abs() < 1e-10);
        let first_law = j.mean(0) + j.mean(1) + j.mean(2) + j.mean(3);
        assert!(first_law.abs() < 1e-10);
    }
}

#[test]
fn brute_force_enumeration_agrees_exactly() {
    let (lc, lh) = ([0.0, 0.8, 2.1], [0.0, 1.1, 2.9]);
    let (bc, bh) = (1.4, 0.6);
    let u = random_unitary(&mut rng(3), 3);
    let h0 = Operator::diagonal(&lc);
    let h1 = Operator::diagonal(&lh);
    let strokes = vec![
        StrokeProtocol::from_unitary(&h0, &h1, &u).unwrap(),
        StrokeProtocol::thermal(lh.to_vec(), bh).unwrap(),
        StrokeProtocol::from_unitary(&h1, &h0, &u.adjoint()).unwrap(),
        StrokeProtocol::thermal(lc.to_vec(), bc).unwrap(),
    ];
    let j = cycle_joint_distribution(bc, &strokes).unwrap();
    assert_eq!(j.kinds(), &[StrokeKind::Work, StrokeKind::Heat, StrokeKind::Work, StrokeKind::Heat]);
    let p0 = thermal_weights(&lc, bc).unwrap();
    let mut expected = Vec::new();
    for a in 0..3 {
        for b in 0..3 {
            for cc in 0..3 {
                for d in 0..3 {
                    for e in 0..3 {
                        let p = p0[a]
                            * strokes[0].transition()[(a, b)]
                            * strokes[1].transition()[(b, cc)]
                            * strokes[2].transition()[(cc, d)]
                            * strokes[3].transition()[(d, e)];
                        let v = vec![lh[b] - lc[a], lh[cc] - lh[b], lc[d] - lh[cc], lc[e] - lc[d]];
                        expected.push((vec![a, b, cc, d, e], v, p));
                    }
                }
            }
        }
    }
    assert_eq!(j.trajectories().len(), expected.len());
    for (t, (levels, values, p)) in j.trajectories().iter().zip(&expected) {
        assert_eq!(&t.levels, levels);
        assert_eq!(&t.values, values);
        assert_eq!(t.probability, *p);
    }
}

#[test]
fn tpm_mean_equals_energy_change() {
    let mut r = rng(11);
    for _ in 0..20 {
        let h0 = random_hermitian(&mut r, 3);
        let h1 = random_hermitian(&mut r, 3);
        let u = random_unitary(&mut r, 3);
        let beta = 0.8;
        let s = StrokeProtocol::from_unitary(&h0, &h1, &u).unwrap();
        let w = tpm_work_distribution(&s, beta).unwrap();
        let rho = gibbs_state(&h0, beta).unwrap();
        let after = rho.conjugate_by(&u).unwrap();
        let oracle = expectation_real(&after, &h1).unwrap() - expectation_real(&rho, &h0).unwrap();
        assert!((w.mean() - oracle).abs() < 1e-10);
        assert!((w.total_probability() - 1.0).abs() < 1e-12);
        // unitary strokes are unital
        assert!(s.is_doubly_stochastic());
        let uniform = DMatrix::from_element(1, 3, 1.0 / 3.0) * s.transition();
        assert!(uniform.iter().all(|&x| (x - 1.0 / 3.0).abs() < 1e-12));
    }
}

#[test]
fn eta2_bounds_near_equilibrium() {
    let mut tested = 0;
    for &grad in &[0.01, 0.02, 0.05] {
        let (t_c, t_h) = (1.0, 1.0 + grad);
        let eta_c = 1.0 - t_c / t_h;
        for (lc, lh) in [
            (vec![0.0, 1.0], vec![0.0, 1.0 + 0.5 * grad]),
            (vec![0.0, 1.0, 2.0], vec![0.0, 1.0 + 0.3 * grad, 2.0 + 0.6 * grad]),
            (vec![0.0, 1.0, 2.0], vec![0.0, 1.0 + 0.2 * grad, 2.0 + 0.7 * grad]),
            (vec![0.0, 0.5, 1.0, 1.5, 2.0], vec![0.0, 0.5 + 0.45 * grad, 1.0 + 0.9 * grad, 1.5 + 1.35 * grad, 2.0 + 1.8 * grad]),
        ] {
            let j = cycle_joint_distribution(1.0 / t_c, &otto(&lc, &lh, 1.0 / t_c, 1.0 / t_h)).unwrap();
            let chk = eta2_bound_check(&j, 1, eta_c, grad).unwrap();
            assert!(chk.within_bounds, "{chk:?}");
            assert!(!chk.regime_warning);
            tested += 1;
        }
    }
    assert_eq!(tested, 12);
}

#[test]
fn nonadiabatic_efficiency_support_exceeds_carnot() {
    let (t_h, t_c) = (2.0, 1.0);
    let h0 = qubit::excitation();
    let h1 = qubit::excitation().scale(1.5);
    let theta: f64 = 0.4;
    let u = Operator::new(
        (qubit::sigma_x().scale_c(c(0.0, -theta.sin())) + Operator::identity(2).scale(theta.cos())).into_matrix(),
    )
    .unwrap();
    let strokes = vec![
        StrokeProtocol::from_unitary(&h0, &h1, &u).unwrap(),
        StrokeProtocol::thermal(vec![0.0, 1.5], 1.0 / t_h).unwrap(),
        StrokeProtocol::from_unitary(&h1, &h0, &u.adjoint()).unwrap(),
        StrokeProtocol::thermal(vec![0.0, 1.0], 1.0 / t_c).unwrap(),
    ];
    let j = cycle_joint_distribution(1.0 / t_c, &strokes).unwrap();
    let eff = efficiency_distribution(&j, 1).unwrap();
    let eta_c = 1.0 - t_c / t_h;
    let total: f64 = eff.distribution.total_probability();
    assert!((total - 1.0).abs() < 1e-12);
    assert!(eff.excluded_mass > 0.0);
    assert!(eff.distribution.atoms().iter().any(|&(eta, p)| eta > eta_c && p > 0.0));
}

#[test]
fn tur_holds_for_biased_hopping() {
    for &(p, q) in &[(1.0, 0.5), (2.0, 1.9), (5.0, 0.01)] {
        let (mean, var, sigma) = biased_hopping_statistics(p, q).unwrap();
        assert!(tur_check(mean, var, sigma).unwrap().satisfied);
    }
}

proptest! {
    #[test]
    fn merging_preserves_moments(values in prop::collection::vec(-3i32..3, 1..12), seed in any::<u64>()) {
        use rand::Rng;
        let mut r = rng(seed);
        let w: Vec<f64> = values.iter().map(|_| r.random_range(0.01..1.0)).collect();
        let z: f64 = w.iter().sum();
        let atoms: Vec<(f64, f64)> = values.iter().zip(&w).map(|(&v, &p)| (v as f64 * 0.5, p / z)).collect();
        let raw_mean: f64 = atoms.iter().map(|(v, p)| v * p).sum();
        let raw_m2: f64 = atoms.iter().map(|(v, p)| v * v * p).sum();
        let d = OutcomeDistribution::new(atoms).unwrap();
        prop_assert!((d.total_probability() - 1.0).abs() < 1e-12);
        prop_assert!((d.mean() - raw_mean).abs() < 1e-12);
        prop_assert!((d.moment(2) - raw_m2).abs() < 1e-12);
    }

    #[test]
    fn squeezed_eta_below_generalized_carnot(ratio in 0.01f64..0.99, r in 0.0f64..3.0) {
        let star = squeezed_eff_max_power(1.0, ratio, r).unwrap();
        let gen = generalized_carnot(1.0, ratio, r).unwrap();
        prop_assert!(star < gen);
    }

    #[test]
    fn ergotropy_shift_invariant(seed in any::<u64>(), shift in -5.0f64..5.0) {
        let mut r = rng(seed);
        let rho = random_state(&mut r, 3);
        let h = random_hermitian(&mut r, 3);
        let a = ergotropy(&rho, &h).unwrap();
        let b = ergotropy(&rho, &(&h + &Operator::identity(3).scale(shift))).unwrap();
        prop_assert!((a - b).abs() < 1e-12);
        prop_assert!(a >= 0.0);
    }
}

#[test]
fn ergotropy_vanishes_exactly_on_passive_states() {
    let h = Operator::diagonal(&[0.0, 1.0, 2.5]);
    let passive = DensityMatrix::from_diagonal(&[0.6, 0.3, 0.1]).unwrap();
    assert!(ergotropy(&passive, &h).unwrap().abs() < 1e-12);
    let active = DensityMatrix::from_diagonal(&[0.3, 0.6, 0.1]).unwrap();
    assert!((ergotropy(&active, &h).unwrap() - 0.3).abs() < 1e-12);
    let coherent = DensityMatrix::pure(&[c(0.8, 0.0), c(0.6, 0.0), c(0.0, 0.0)]).unwrap();
    assert!(ergotropy(&coherent, &h).unwrap() > 0.0);
}

#[test]
fn squeezed_cycle_limits() {
    let spec = SqueezedOttoSpec::adiabatic(1.0, 2.0, 1.0, 0.2, 0.0);
    let cyc = squeezed_otto_cycle(&spec).unwrap();
    assert!((cyc.work + cyc.q_h + cyc.q_c).abs() < 1e-12);
    assert!((squeezed_otto_efficiency(&spec).unwrap() - 0.5).abs() < 1e-12);
    assert!((squeezed_eff_max_power(1.0, 0.2, 0.0).unwrap() - (1.0 - 0.2f64.sqrt())).abs() < 1e-12);
    // crossing of the bare Carnot value 0.8 sits at sinh²r = 2
    let r_cross = 2f64.sqrt().asinh();
    assert!(squeezed_eff_max_power(1.0, 0.2, r_cross - 1e-3).unwrap() < 0.8);
    assert!(squeezed_eff_max_power(1.0, 0.2, r_cross + 1e-3).unwrap() > 0.8);
}

#[test]
fn phaseonium_sign_rule_on_grid() {
    for k in 0..=24 {
        let phi = std::f64::consts::PI * k as f64 / 12.0;
        for &n_th in &[10.0, 1e3] {
            let s = PhaseoniumSpec { t_h: 1.0, t_c: 0.85, n_th, rho_bc_abs: 3e-6, phi };
            let eta = phaseonium_efficiency(&s).unwrap();
            let shift = n_th * 3.0 * 3e-6 * phi.cos();
            if shift.abs() > 1e-12 {
                assert_eq!(eta > 0.15, shift < 0.0, "φ = {phi}");
            }
        }
    }
}

#[test]
fn phaseonium_fixed_point_first_order() {
    let (p_a, p_b, p_c) = (0.2, 0.4, 0.4);
    let n_th = p_a * 2.0 / (p_b + p_c - 2.0 * p_a);
    for &rho in &[1e-5, 1e-4] {
        let eps = 2.0 * rho / (p_b + p_c);
        let exact = phaseonium_photon_fixed_point(p_a, p_b, p_c, rho, 0.3).unwrap();
        let first = n_th - n_th * (n_th + 1.0) * eps * 0.3f64.cos();
        assert!((exact - first).abs() < 10.0 * (n_th * (n_th + 1.0) * eps).powi(2) * (n_th + 1.0));
    }
}
