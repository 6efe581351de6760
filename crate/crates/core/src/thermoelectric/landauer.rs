//! Landauer-Büttiker currents through a single channel and their linear
//! response.

use super::{LeadSpec, TransmissionFunction};
use crate::error::{Error, Result};
use crate::numerics::integrate_with_breaks;

/// Absolute quadrature tolerance for transport integrals.
const TRANSPORT_TOL: f64 = 1e-12;

/// Fermi tails beyond this many `k_B T` are dropped (`e^{−45}` ≈ 3e-20).
const WINDOW: f64 = 45.0;

/// Steady currents for a two-terminal channel. `j_e` is the particle current
/// leaving `L` (arriving in `R`); heat currents leave their lead. `p_gen` is
/// `−Σ μ_i J_{e,i}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LandauerCurrents {
    pub j_e: f64,
    pub j_u_l: f64,
    pub j_h_l: f64,
    pub j_h_r: f64,
    pub p_gen: f64,
}

fn grid(tau: &TransmissionFunction, lo: f64, hi: f64, extra: &[f64]) -> Vec<f64> {
    let mut pts = vec![lo, hi];
    pts.extend(extra.iter().copied().filter(|&x| x > lo && x < hi));
    pts.extend(tau.features(lo, hi));
    pts
}

fn quad<F: FnMut(f64) -> f64>(mut f: F, pts: &[f64]) -> Result<f64> {
    let r = integrate_with_breaks(&mut f, pts, TRANSPORT_TOL)?;
    Ok(r.value)
}

pub fn landauer_currents(tau: &TransmissionFunction, l: &LeadSpec, r: &LeadSpec) -> Result<LandauerCurrents> {
    let t_max = l.temperature().max(r.temperature());
    let lo = l.mu.min(r.mu) - WINDOW * t_max;
    let hi = l.mu.max(r.mu) + WINDOW * t_max;
    let pts = grid(tau, lo, hi, &[l.mu, r.mu]);
    let window = |e: f64| tau.eval(e) * (l.occupation(e) - r.occupation(e));
    let j_e = quad(window, &pts)?;
    let j_u_l = quad(|e| e * window(e), &pts)?;
    let j_h_l = quad(|e| (e - l.mu) * window(e), &pts)?;
    let j_h_r = quad(|e| -(e - r.mu) * window(e), &pts)?;
    let p_gen = (r.mu - l.mu) * j_e;
    let scale = j_u_l.abs().max(j_h_l.abs()).max(j_h_r.abs()).max(1.0);
    let residual = (j_h_l + j_h_r - p_gen).abs();
    if residual > 1e-9 * scale {
        return Err(Error::Accuracy { what: "Landauer first law".into(), estimate: residual, error: 1e-9 * scale });
    }
    Ok(LandauerCurrents { j_e, j_u_l, j_h_l, j_h_r, p_gen })
}

/// Onsager matrix `[[L_ee, L_eh], [L_he, L_hh]]` for forces
/// `F_e = ΔV/T`, `F_h = ΔT/T²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OnsagerMatrix {
    pub l_ee: f64,
    pub l_eh: f64,
    pub l_he: f64,
    pub l_hh: f64,
}

impl OnsagerMatrix {
    pub fn det(&self) -> f64 {
        self.l_ee * self.l_hh - self.l_eh * self.l_he
    }
}

/// `L_ee = T I⁽⁰⁾`, `L_eh = L_he = T I⁽¹⁾`, `L_hh = T I⁽²⁾` with
/// `I⁽ⁿ⁾ = ∫ (E − μ)ⁿ τ(E) (−∂f/∂E) dE`.
pub fn onsager_matrix(tau: &TransmissionFunction, t: f64, mu: f64) -> Result<OnsagerMatrix> {
    let lead = LeadSpec::from_temperature(t, mu)?;
    let beta = lead.beta;
    let lo = mu - WINDOW * t;
    let hi = mu + WINDOW * t;
    let pts = grid(tau, lo, hi, &[mu]);
    let kernel = |e: f64| {
        let x = 0.5 * beta * (e - mu);
        tau.eval(e) * beta / (4.0 * x.cosh().powi(2))
    };
    let i0 = quad(kernel, &pts)?;
    let i1 = quad(|e| (e - mu) * kernel(e), &pts)?;
    let i2 = quad(|e| (e - mu).powi(2) * kernel(e), &pts)?;
    Ok(OnsagerMatrix { l_ee: t * i0, l_eh: t * i1, l_he: t * i1, l_hh: t * i2 })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransportCoefficients {
    /// Electrical conductance.
    pub g: f64,
    /// Thermal conductance at zero particle current.
    pub k: f64,
    /// Seebeck coefficient.
    pub s: f64,
    /// Peltier coefficient.
    pub pi: f64,
}

/// `G = L_ee/T`, `K = det L/(T² L_ee)`, `S = L_eh/(T L_ee)`, `Π = L_he/L_ee`.
pub fn transport_coefficients(l: &OnsagerMatrix, t: f64) -> Result<TransportCoefficients> {
    if !(l.l_ee > 0.0) {
        return Err(Error::Domain("L_ee must be positive for transport coefficients".into()));
    }
    if !(t > 0.0) {
        return Err(Error::Domain(format!("temperature must be positive, got {t}")));
    }
    Ok(TransportCoefficients {
        g: l.l_ee / t,
        k: l.det() / (t * t * l.l_ee),
        s: l.l_eh / (t * l.l_ee),
        pi: l.l_he / l.l_ee,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FigureOfMerit {
    pub zt: f64,
    /// `η_max/η_C`.
    pub eta_max_ratio: f64,
}

/// `η_max/η_C = (√(ZT+1) − 1)/(√(ZT+1) + 1)`.
pub fn max_efficiency_ratio(zt: f64) -> Result<f64> {
    if !(zt >= 0.0) {
        return Err(Error::Domain(format!("ZT must be ≥ 0, got {zt}")));
    }
    if zt.is_infinite() {
        return Ok(1.0);
    }
    let s = (zt + 1.0).sqrt();
    Ok((s - 1.0) / (s + 1.0))
}

/// `ZT = S² G T / K` and the corresponding maximum efficiency ratio.
pub fn figure_of_merit(g: f64, k: f64, s: f64, t: f64) -> Result<FigureOfMerit> {
    if !(k > 0.0) {
        return Err(Error::Domain(format!("thermal conductance must be positive, got {k}")));
    }
    let zt = s * s * g * t / k;
    Ok(FigureOfMerit { zt, eta_max_ratio: max_efficiency_ratio(zt)? })
}
