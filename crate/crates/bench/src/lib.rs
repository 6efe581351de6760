//! Fixtures shared by the criterion benchmarks under `benches/`.

use qheat::continuous::{MaserSpec, QarSpec};
use qheat::fluctuations::StrokeProtocol;
use qheat::LeadSpec;

pub fn maser() -> MaserSpec {
    MaserSpec { omega1: 0.0, omega2: 40.0, omega3: 50.0, gamma_h: 1.0, gamma_c: 1.0, gamma_w: 1.0, t_h: 80.0, t_c: 10.0 }
}

pub fn qar() -> QarSpec {
    QarSpec {
        omega_h: 2.0,
        omega_c: 1.0,
        g: 0.05,
        t_h: 1.0,
        t_c: 0.8,
        t_w: 5.0,
        gamma_h: 1e-3,
        gamma_c: 1e-3,
        gamma_w: 1e-3,
    }
}

pub fn leads() -> (LeadSpec, LeadSpec) {
    (LeadSpec::from_temperature(2.0, 0.0).expect("valid lead"), LeadSpec::from_temperature(1.0, 0.2).expect("valid lead"))
}

/// Adiabatic Otto cycle of an evenly spaced `d`-level ladder.
pub fn otto_strokes(d: usize) -> Vec<StrokeProtocol> {
    let lc: Vec<f64> = (0..d).map(|k| k as f64).collect();
    let lh: Vec<f64> = (0..d).map(|k| 2.5 * k as f64).collect();
    vec![
        StrokeProtocol::adiabatic(lc.clone(), lh.clone()).expect("matching ladders"),
        StrokeProtocol::thermal(lh.clone(), 0.2).expect("positive beta"),
        StrokeProtocol::adiabatic(lh, lc.clone()).expect("matching ladders"),
        StrokeProtocol::thermal(lc, 1.0).expect("positive beta"),
    ]
}
