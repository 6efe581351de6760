//! Superconducting junctions: quasiparticle currents through an SIS tunnel
//! junction and the photon-assisted Josephson engine.

use crate::baths::fermi;
use crate::error::{Error, Result};
use crate::numerics::integrate;

const SIS_TOL: f64 = 1e-10;

/// Fermi tails beyond this many `k_B T` past the last gap edge are dropped.
const TAIL: f64 = 60.0;

/// BCS density of states `θ(|E| − Δ)|E|/√(E² − Δ²)`, normalized to the
/// normal-state value. `Δ = 0` gives 1.
pub fn bcs_dos(e: f64, delta: f64) -> f64 {
    if delta == 0.0 {
        return 1.0;
    }
    let a = e.abs();
    if a <= delta {
        0.0
    } else {
        a / ((a - delta) * (a + delta)).sqrt()
    }
}

/// Quasiparticle currents through an SIS junction biased so that
/// `μ_L − μ_R = −V`.
///
/// `i_l = −G_T ∫ N_L N_R [f_L − f_R] dE` is the charge current in units of
/// `e`: positive when particles flow from `R` to `L`, so an ohmic junction
/// has `i_l/V > 0`. `q_l` is the heat leaving `L`, and `p_gen = −i_l V` is
/// positive exactly when the junction generates power.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SisCurrents {
    pub i_l: f64,
    pub q_l: f64,
    pub p_gen: f64,
}

impl SisCurrents {
    /// `I/V < 0`: current flows against the bias.
    pub fn negative_conductance(&self, v: f64) -> bool {
        v != 0.0 && self.i_l / v < 0.0
    }
}

/// Integral of `g` over the real line where both densities of states are
/// non-zero. Each allowed interval is mapped so that inverse-square-root gap
/// edges become smooth: `x = a + (b − a)(1 − cos θ)/2` between edges and
/// `x = a ± s(cosh u − 1)` on the tails.
fn gapped_integral<G: Fn(f64) -> f64>(g: G, edges: &[f64], allowed: impl Fn(f64) -> bool, scale: f64) -> Result<f64> {
    let mut pts = edges.to_vec();
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    let tol = SIS_TOL * scale.max(1.0);
    let mut total = 0.0;
    for w in pts.windows(2) {
        let (a, b) = (w[0], w[1]);
        if b <= a || !allowed(0.5 * (a + b)) {
            continue;
        }
        let half = 0.5 * (b - a);
        let r = integrate(
            |th: f64| {
                let x = a + half * (1.0 - th.cos());
                g(x) * half * th.sin()
            },
            0.0,
            std::f64::consts::PI,
            tol,
        )?;
        total += r.value;
    }
    let u_max = (1.0 + TAIL).acosh();
    let lo = pts[0];
    let hi = pts[pts.len() - 1];
    for (edge, dir) in [(hi, 1.0), (lo, -1.0)] {
        if !allowed(edge + dir * scale) {
            continue;
        }
        let r = integrate(
            |u: f64| {
                let x = edge + dir * scale * (u.cosh() - 1.0);
                g(x) * scale * u.sinh()
            },
            0.0,
            u_max,
            tol,
        )?;
        total += r.value;
    }
    Ok(total)
}

/// Quasiparticle charge and heat currents of an SIS junction with gaps
/// `Δ_L`, `Δ_R`, bias `V`, temperatures `T_L`, `T_R` and tunnel conductance
/// `G_T` (units `e = h = k_B = 1`). Josephson terms are excluded.
pub fn sis_currents(delta_l: f64, delta_r: f64, v: f64, t_l: f64, t_r: f64, g_t: f64) -> Result<SisCurrents> {
    if !(delta_l >= 0.0 && delta_r >= 0.0) || !delta_l.is_finite() || !delta_r.is_finite() {
        return Err(Error::Domain("gaps must be finite and ≥ 0".into()));
    }
    if !(t_l > 0.0 && t_r > 0.0) || !t_l.is_finite() || !t_r.is_finite() {
        return Err(Error::Domain("temperatures must be positive".into()));
    }
    if !v.is_finite() || !(g_t >= 0.0) {
        return Err(Error::Domain("need finite bias and G_T ≥ 0".into()));
    }
    let mu_r = 0.0;
    let mu_l = -v;
    let window = |e: f64| {
        let (el, er) = (e - mu_l, e - mu_r);
        bcs_dos(el, delta_l) * bcs_dos(er, delta_r) * (fermi(1.0 / t_l, el) - fermi(1.0 / t_r, er))
    };
    let allowed = |e: f64| (e - mu_l).abs() > delta_l && (e - mu_r).abs() > delta_r;
    let edges = [mu_l - delta_l, mu_l + delta_l, mu_r - delta_r, mu_r + delta_r];
    let scale = t_l.max(t_r);
    let map_err = |e: Error| match e {
        Error::Accuracy { estimate, error, .. } => Error::Accuracy {
            what: format!("SIS quadrature at V = {v} (coincident gap edges diverge)"),
            estimate,
            error,
        },
        other => other,
    };
    let particles = gapped_integral(window, &edges, allowed, scale).map_err(map_err)?;
    let heat = gapped_integral(|e| (e - mu_l) * window(e), &edges, allowed, scale).map_err(map_err)?;
    let i_l = -g_t * particles;
    Ok(SisCurrents { i_l, q_l: g_t * heat, p_gen: -i_l * v })
}

/// Resonance of the photon-assisted Josephson engine.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JosephsonResonance {
    /// Bias from `2eV = mΩ_h − nΩ_c` with `e = 1`.
    pub voltage: f64,
    /// `η = 1 − nΩ_c/(mΩ_h)` per tunnelled Cooper pair.
    pub efficiency: f64,
}

impl JosephsonResonance {
    /// Whether the efficiency stays below Carnot for cavity baths at
    /// `T_h > T_c`.
    pub fn below_carnot(&self, t_h: f64, t_c: f64) -> Result<bool> {
        if !(t_h > t_c && t_c > 0.0) {
            return Err(Error::Domain("need T_h > T_c > 0".into()));
        }
        Ok(self.efficiency < 1.0 - t_c / t_h)
    }
}

/// A Cooper pair tunnels against the bias by absorbing `m` hot photons and
/// emitting `n` cold ones.
pub fn josephson_photonic(m: u32, n: u32, omega_h: f64, omega_c: f64) -> Result<JosephsonResonance> {
    if m == 0 || n == 0 {
        return Err(Error::Domain("photon numbers m and n must be ≥ 1".into()));
    }
    if !(omega_h > omega_c && omega_c > 0.0) || !omega_h.is_finite() {
        return Err(Error::Domain("need Ω_h > Ω_c > 0".into()));
    }
    let gain = m as f64 * omega_h;
    let cost = n as f64 * omega_c;
    if gain <= cost {
        return Err(Error::Regime(format!("mΩ_h = {gain} does not exceed nΩ_c = {cost}: no power")));
    }
    Ok(JosephsonResonance { voltage: 0.5 * (gain - cost), efficiency: 1.0 - cost / gain })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equilibrium_junction() {
        let c = sis_currents(1.0, 0.5, 0.0, 0.3, 0.3, 1.0).unwrap();
        assert!(c.i_l.abs() < 1e-8 && c.q_l.abs() < 1e-8);
    }

    #[test]
    fn normal_junction_is_ohmic() {
        let c = sis_currents(0.0, 0.0, 0.4, 0.5, 0.2, 2.0).unwrap();
        assert!((c.i_l - 0.8).abs() < 1e-8);
        assert!(!c.negative_conductance(0.4));
    }

    #[test]
    fn josephson_examples() {
        let r = josephson_photonic(1, 1, 2.0, 1.0).unwrap();
        assert_eq!((r.voltage, r.efficiency), (0.5, 0.5));
        assert!((josephson_photonic(2, 1, 3.0, 1.0).unwrap().efficiency - 5.0 / 6.0).abs() < 1e-15);
        assert!(josephson_photonic(1, 0, 3.0, 1.0).is_err());
        assert!(matches!(josephson_photonic(1, 3, 2.0, 1.0), Err(Error::Regime(_))));
    }
}
