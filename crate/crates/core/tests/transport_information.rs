mod common;

use common::*;
use proptest::prelude::*;
use qheat::information::{
    binary_entropy, conditional_erasure_work, erasure_work, measurement_engine_energetics, sagawa_ueda_gap,
    steering_work_bound, MeasurementRecord,
};
use qheat::thermoelectric::{
    harvester_current, landauer_currents, max_efficiency_ratio, onsager_matrix, rate_steady_state,
    sis_currents, transport_coefficients, RateModel, TransmissionTable,
};
use qheat::{DensityMatrix, HilbertFactorization, LeadSpec, Nats, TransmissionFunction};
use rand::Rng;
use std::f64::consts::LN_2;

fn lead(t: f64, mu: f64) -> LeadSpec {
    LeadSpec::from_temperature(t, mu).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn onsager_symmetric_psd_on_random_tables(seed in any::<u64>(), t in 0.2f64..2.0, mu in -1.0f64..1.0) {
        let mut r = rng(seed);
        let energy: Vec<f64> = (0..12).map(|k| -3.0 + 0.5 * k as f64).collect();
        let tau: Vec<f64> = energy.iter().map(|_| r.random_range(0.0..1.0)).collect();
        let f = TransmissionFunction::Tabulated(TransmissionTable::new(energy, tau).unwrap());
        let l = onsager_matrix(&f, t, mu).unwrap();
        prop_assert_eq!(l.l_eh, l.l_he);
        prop_assert!(l.l_ee >= 0.0 && l.l_hh >= 0.0);
        prop_assert!(l.det() >= -1e-12 * l.l_ee * l.l_hh);
        if l.l_ee > 0.0 {
            let k = transport_coefficients(&l, t).unwrap();
            prop_assert!((k.pi - t * k.s).abs() < 1e-12 * k.pi.abs().max(1.0));
        }
    }

    #[test]
    fn harvester_odd_under_swap(a in 0.0f64..5.0, b in 0.01f64..5.0, c in 0.01f64..5.0, d in 0.0f64..5.0) {
        let i = harvester_current(a, b, c, d, 1.0, 1.0).unwrap();
        let j = harvester_current(c, d, a, b, 1.0, 1.0).unwrap();
        prop_assert!((i + j).abs() < 1e-12);
    }
}

#[test]
fn equilibrium_is_silent_for_every_backend() {
    let l = lead(0.7, 0.2);
    for tau in [
        TransmissionFunction::Constant { tau0: 0.4 },
        TransmissionFunction::Boxcar { center: 0.5, width: 0.2, tau0: 1.0 },
        TransmissionFunction::breit_wigner(0.4, 0.01, 0.03).unwrap(),
    ] {
        let c = landauer_currents(&tau, &l, &l).unwrap();
        assert!(c.j_e.abs() < 1e-10 && c.j_h_l.abs() < 1e-10 && c.j_h_r.abs() < 1e-10);
    }
    let m = RateModel::single_level(0.4, &[(l, 0.01), (l, 0.03)]).unwrap();
    let s = rate_steady_state(&m).unwrap();
    assert!(s.j_e.iter().chain(&s.j_h).all(|j| j.abs() < 1e-10));
    let sis = sis_currents(1.0, 0.6, 0.0, 0.4, 0.4, 1.0).unwrap();
    assert!(sis.i_l.abs() < 1e-10 && sis.q_l.abs() < 1e-10);
}

#[test]
fn boxcar_engine_generates_power() {
    let tau = TransmissionFunction::Boxcar { center: 1.0, width: 0.3, tau0: 1.0 };
    let c = landauer_currents(&tau, &lead(2.0, 0.0), &lead(1.0, 0.2)).unwrap();
    assert!(c.j_e > 0.0 && c.p_gen > 0.0);
    assert!(c.p_gen < c.j_h_l);
    assert!((c.j_h_l + c.j_h_r - c.p_gen).abs() < 1e-10);
    assert!(c.p_gen / c.j_h_l < 0.5);
}

#[test]
fn seebeck_limits() {
    for &(t, mu) in &[(1.0, 0.0), (0.5, 0.3)] {
        let sym = [
            TransmissionFunction::Constant { tau0: 0.8 },
            TransmissionFunction::Boxcar { center: mu, width: 1.0, tau0: 0.5 },
            TransmissionFunction::Lorentzian { center: mu, gamma: 0.3, peak: 1.0 },
        ];
        for tau in &sym {
            let k = transport_coefficients(&onsager_matrix(tau, t, mu).unwrap(), t).unwrap();
            assert!(k.s.abs() < 1e-8, "{tau:?}: {}", k.s);
        }
        let e0 = mu + 1.5 * t;
        let narrow = TransmissionFunction::Boxcar { center: e0, width: 0.01 * t, tau0: 1.0 };
        let k = transport_coefficients(&onsager_matrix(&narrow, t, mu).unwrap(), t).unwrap();
        let want = (e0 - mu) / t;
        assert!((k.s - want).abs() < 0.01 * want);
    }
}

#[test]
fn rate_equations_match_landauer_for_weak_coupling() {
    let (t, level) = (1.0, 0.3);
    let (gl, gr) = (0.01 * t, 0.01 * t);
    let l = lead(1.5 * t, 0.2);
    let r = lead(t, -0.1);
    let m = RateModel::single_level(level, &[(l, gl), (r, gr)]).unwrap();
    let s = rate_steady_state(&m).unwrap();
    let bw = TransmissionFunction::breit_wigner(level, gl, gr).unwrap();
    let c = landauer_currents(&bw, &l, &r).unwrap();
    assert!((s.j_e[0] - c.j_e).abs() < 0.05 * c.j_e.abs(), "{} vs {}", s.j_e[0], c.j_e);
    assert!((s.j_e[0] + s.j_e[1]).abs() < 1e-14);
}

#[test]
fn normal_sis_matches_landauer() {
    let (v, t_l, t_r, g) = (0.3, 0.8, 0.4, 0.7);
    let sis = sis_currents(0.0, 0.0, v, t_l, t_r, g).unwrap();
    let c = landauer_currents(&TransmissionFunction::Constant { tau0: g }, &lead(t_l, -v), &lead(t_r, 0.0)).unwrap();
    assert!((sis.i_l + c.j_e).abs() < 1e-9);
    assert!((sis.q_l - c.j_h_l).abs() < 1e-9);
}

#[test]
fn thermal_gradient_gives_negative_conductance_window() {
    let (dl, dr, t_l, t_r) = (1.0, 0.5, 0.5, 0.1);
    let mut window = Vec::new();
    for k in 1..40 {
        let v = 0.01 * k as f64;
        if (v - (dl - dr)).abs() < 0.02 {
            continue;
        }
        let c = sis_currents(dl, dr, v, t_l, t_r, 1.0).unwrap();
        if c.negative_conductance(v) {
            assert!(c.p_gen > 0.0);
            window.push(v);
        }
    }
    assert!(!window.is_empty());
    let cold = sis_currents(dl, dr, window[0], 0.1, 0.1, 1.0).unwrap();
    assert!(!cold.negative_conductance(window[0]));
}

#[test]
fn harvester_asymmetry_sweep() {
    let mut prev = f64::NEG_INFINITY;
    for k in 0..=30 {
        let ratio = 10f64.powf(3.0 * k as f64 / 30.0);
        let i = harvester_current(ratio, 1.0, 1.0, ratio, 1.0, 1.0).unwrap();
        assert!((i - (ratio - 1.0) / (ratio + 1.0)).abs() < 1e-14);
        assert!(i > prev || k == 0);
        prev = i;
    }
}

#[test]
fn zt_efficiency_monotone_and_bounded() {
    let mut prev = -1.0;
    for k in 0..200 {
        let zt = 0.05 * k as f64;
        let e = max_efficiency_ratio(zt).unwrap();
        assert!(e > prev && e < 1.0);
        prev = e;
    }
}

#[test]
fn erasure_peak_and_classical_memory() {
    let f = HilbertFactorization::bipartite(2, 2).unwrap();
    let mut best = (0.0, -1.0);
    for k in 0..=100 {
        let p = k as f64 / 100.0;
        let w = erasure_work(p, 1.0).unwrap();
        assert!(w <= LN_2 + 1e-15);
        if w > best.1 {
            best = (p, w);
        }
        let rho = DensityMatrix::from_diagonal(&[p, 0.0, 1.0 - p, 0.0]).unwrap();
        let wc = conditional_erasure_work(&rho, &f, 1.0).unwrap();
        assert!((wc - w).abs() < 1e-12);
    }
    assert_eq!(best.0, 0.5);
    assert_eq!(binary_entropy(0.5).unwrap().0, 1.0);
}

#[test]
fn sagawa_ueda_verdicts_on_random_records() {
    let mut r = rng(5);
    for _ in 0..200 {
        let n = r.random_range(2..5);
        let normalize = |v: Vec<f64>| {
            let s: f64 = v.iter().sum();
            let mut out: Vec<f64> = v.iter().map(|x| x / s).collect();
            let tail: f64 = out[..out.len() - 1].iter().sum();
            *out.last_mut().unwrap() = 1.0 - tail;
            out
        };
        let p_m = normalize((0..n).map(|_| r.random_range(0.05..1.0)).collect());
        let rows = (0..n).map(|_| normalize((0..n).map(|_| r.random_range(0.05..1.0)).collect())).collect();
        let rec = MeasurementRecord::new(p_m, rows).unwrap();
        let i = rec.mean_information();
        assert!(i.0 >= 0.0);
        let t = r.random_range(0.1..3.0);
        let samples: Vec<f64> = (0..50).map(|_| r.random_range(-1.0..1.0)).collect();
        let w = samples.iter().sum::<f64>() / 50.0 - 0.3 * t * i.0;
        let df = r.random_range(-0.2..0.2);
        let chk = sagawa_ueda_gap(w, df, i, t).unwrap();
        assert_eq!(chk.satisfied, w - df >= -t * i.0 - 1e-12);
    }
    let ideal = MeasurementRecord::perfect(vec![0.5, 0.5]).unwrap();
    assert!(sagawa_ueda_gap(-LN_2, 0.0, ideal.mean_information(), 1.0).unwrap().slack.abs() < 1e-12);
    assert!(sagawa_ueda_gap(0.1, 0.0, Nats(0.0), 1.0).unwrap().satisfied);
}

#[test]
fn steering_advantage_changes_sign_at_most_once() {
    let mut last = None;
    let mut changes = 0;
    let mut region = Vec::new();
    for k in 0..=500 {
        let beta = 5.0 * k as f64 / 500.0;
        let b = steering_work_bound(beta).unwrap();
        if b.quantum_advantage {
            region.push(beta);
        }
        if last.is_some_and(|prev| prev != b.quantum_advantage) {
            changes += 1;
        }
        last = Some(b.quantum_advantage);
    }
    assert!(changes <= 1);
    assert_eq!(region.first(), Some(&0.0));
    eprintln!("steering advantage on β ∈ [0, {}] of [0, 5]", region.last().unwrap());
}

#[test]
fn measurement_energy_grows_with_coupling() {
    let mut prev = -1.0;
    for k in 0..100 {
        let e = measurement_engine_energetics(0.05 * k as f64, 1.3).unwrap();
        assert!(e.e_m > prev && e.e_m <= e.work);
        prev = e.e_m;
    }
}
