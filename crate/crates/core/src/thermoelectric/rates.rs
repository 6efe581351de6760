//! Sequential-tunneling rate equations and the Coulomb-coupled energy
//! harvester.

use nalgebra::DMatrix;

use super::LeadSpec;
use crate::error::{Error, Result};
use crate::numerics::unique_null_vector;

/// One lead's rate matrix: `rates[(k, l)]` is the rate of `l → k` transfers
/// mediated by this lead.
#[derive(Debug, Clone, PartialEq)]
pub struct LeadRates {
    pub lead: LeadSpec,
    pub rates: DMatrix<f64>,
}

/// Classical master equation over dot many-body states with energies `E_k`
/// and electron numbers `N_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct RateModel {
    energies: Vec<f64>,
    charges: Vec<i32>,
    leads: Vec<LeadRates>,
}

impl RateModel {
    pub fn new(energies: Vec<f64>, charges: Vec<i32>, leads: Vec<LeadRates>) -> Result<Self> {
        let d = energies.len();
        if d == 0 {
            return Err(Error::Domain("rate model needs at least one state".into()));
        }
        if charges.len() != d {
            return Err(Error::DimensionMismatch { expected: d, got: charges.len() });
        }
        if energies.iter().any(|e| !e.is_finite()) {
            return Err(Error::NonFinite);
        }
        for lr in &leads {
            if lr.rates.nrows() != d || lr.rates.ncols() != d {
                return Err(Error::DimensionMismatch { expected: d, got: lr.rates.nrows() });
            }
            if lr.rates.iter().any(|&g| !(g >= 0.0) || !g.is_finite()) {
                return Err(Error::Domain("tunnel rates must be finite and ≥ 0".into()));
            }
        }
        Ok(RateModel { energies, charges, leads })
    }

    /// Golden-rule rates for energy-independent tunnel widths `Γ_i`: adding
    /// an electron (`N_k = N_l + 1`) happens at `2πΓ_i f_i(E_k − E_l)`,
    /// removing it at `2πΓ_i (1 − f_i(E_k − E_l))`.
    pub fn sequential(energies: Vec<f64>, charges: Vec<i32>, couplings: &[(LeadSpec, f64)]) -> Result<Self> {
        let d = energies.len();
        if charges.len() != d {
            return Err(Error::DimensionMismatch { expected: d, got: charges.len() });
        }
        let mut leads = Vec::with_capacity(couplings.len());
        for &(lead, width) in couplings {
            if !(width >= 0.0) {
                return Err(Error::Domain(format!("tunnel width must be ≥ 0, got {width}")));
            }
            let rate = 2.0 * std::f64::consts::PI * width;
            let mut m = DMatrix::zeros(d, d);
            for k in 0..d {
                for l in 0..d {
                    if charges[k] == charges[l] + 1 {
                        let f = lead.occupation(energies[k] - energies[l]);
                        m[(k, l)] = rate * f;
                        m[(l, k)] = rate * (1.0 - f);
                    }
                }
            }
            leads.push(LeadRates { lead, rates: m });
        }
        RateModel::new(energies, charges, leads)
    }

    /// Spinless single level at `ε`: states `|0⟩` (empty) and `|1⟩`.
    pub fn single_level(level: f64, couplings: &[(LeadSpec, f64)]) -> Result<Self> {
        RateModel::sequential(vec![0.0, level], vec![0, 1], couplings)
    }

    pub fn dim(&self) -> usize {
        self.energies.len()
    }

    pub fn leads(&self) -> &[LeadRates] {
        &self.leads
    }

    /// Generator `M` of `dP/dt = M P`.
    pub fn generator(&self) -> DMatrix<f64> {
        let d = self.dim();
        let mut m = DMatrix::zeros(d, d);
        for lr in &self.leads {
            for k in 0..d {
                for l in 0..d {
                    if k != l {
                        m[(k, l)] += lr.rates[(k, l)];
                        m[(l, l)] -= lr.rates[(k, l)];
                    }
                }
            }
        }
        m
    }
}

/// Steady occupations and per-lead currents. `j_e[i]` is the particle
/// current leaving lead `i` into the dot; `j_h[i]` the heat leaving it.
#[derive(Debug, Clone, PartialEq)]
pub struct RateSteadyState {
    pub occupations: Vec<f64>,
    pub j_e: Vec<f64>,
    pub j_h: Vec<f64>,
}

pub fn rate_steady_state(model: &RateModel) -> Result<RateSteadyState> {
    let m = model.generator();
    let v = unique_null_vector(&m, 1e-12)?;
    let s: f64 = v.iter().sum();
    if s.abs() < 1e-300 {
        return Err(Error::AmbiguousSteadyState(0));
    }
    let p: Vec<f64> = v.iter().map(|x| x / s).collect();
    if p.iter().any(|&x| x < -1e-10) {
        return Err(Error::InvalidState("steady occupations are not a probability vector".into()));
    }
    let p: Vec<f64> = p.into_iter().map(|x| x.max(0.0)).collect();
    let d = model.dim();
    let mut j_e = Vec::with_capacity(model.leads.len());
    let mut j_h = Vec::with_capacity(model.leads.len());
    for lr in &model.leads {
        let (mut e, mut h) = (0.0, 0.0);
        for k in 0..d {
            for l in 0..d {
                if k == l {
                    continue;
                }
                let flow = lr.rates[(k, l)] * p[l];
                let dn = (model.charges[k] - model.charges[l]) as f64;
                e += dn * flow;
                h += (model.energies[k] - model.energies[l] - lr.lead.mu * dn) * flow;
            }
        }
        j_e.push(e);
        j_h.push(h);
    }
    Ok(RateSteadyState { occupations: p, j_e, j_h })
}

/// Charge current of the Coulomb-coupled harvester,
/// `I = −(Γ_L1Γ_R0 − Γ_L0Γ_R1)/((Γ_L0+Γ_R0)(Γ_L1+Γ_R1)) · J_g/E_C`.
/// `Γ_{j,n}` is the total rate to lead `j` with the gate dot holding `n`
/// electrons.
pub fn harvester_current(g_l0: f64, g_l1: f64, g_r0: f64, g_r1: f64, j_g: f64, e_c: f64) -> Result<f64> {
    if [g_l0, g_l1, g_r0, g_r1].iter().any(|&g| !(g >= 0.0) || !g.is_finite()) {
        return Err(Error::Domain("harvester rates must be finite and ≥ 0".into()));
    }
    if !(e_c > 0.0) {
        return Err(Error::Domain(format!("charging energy must be positive, got {e_c}")));
    }
    let den = (g_l0 + g_r0) * (g_l1 + g_r1);
    if den == 0.0 {
        return Err(Error::Domain("harvester rate denominator vanishes".into()));
    }
    Ok(-(g_l1 * g_r0 - g_l0 * g_r1) / den * j_g / e_c)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HarvesterPerformance {
    pub efficiency: f64,
    pub stopping_voltage: f64,
}

/// In the optimal-filter limit: `η = ΔV/E_C`, up to `ΔV_stop = E_C η_C`.
pub fn harvester_performance(delta_v: f64, e_c: f64, t_g: f64, t_w: f64) -> Result<HarvesterPerformance> {
    if !(e_c > 0.0) || !(t_g > t_w) || !(t_w > 0.0) {
        return Err(Error::Domain("need E_C > 0 and T_g > T_w > 0".into()));
    }
    let stop = e_c * (1.0 - t_w / t_g);
    if !(delta_v >= 0.0) || delta_v > stop * (1.0 + 1e-12) {
        return Err(Error::Regime(format!("bias {delta_v} outside [0, V_stop = {stop}]")));
    }
    Ok(HarvesterPerformance { efficiency: delta_v / e_c, stopping_voltage: stop })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equilibrium_single_level() {
        let lead = LeadSpec::new(1.0, 0.2).unwrap();
        let m = RateModel::single_level(0.5, &[(lead, 0.01), (lead, 0.03)]).unwrap();
        let s = rate_steady_state(&m).unwrap();
        assert!((s.occupations.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!((s.occupations[1] - lead.occupation(0.5)).abs() < 1e-12);
        for j in s.j_e.iter().chain(&s.j_h) {
            assert!(j.abs() < 1e-12);
        }
    }

    #[test]
    fn disconnected_is_ambiguous() {
        let lead = LeadSpec::new(1.0, 0.0).unwrap();
        let m = RateModel::single_level(0.5, &[(lead, 0.0)]).unwrap();
        assert!(matches!(rate_steady_state(&m), Err(Error::AmbiguousSteadyState(2))));
    }

    #[test]
    fn harvester_examples() {
        assert_eq!(harvester_current(2.0, 2.0, 5.0, 5.0, 1.0, 1.0).unwrap(), 0.0);
        assert!((harvester_current(10.0, 0.0, 0.0, 10.0, 0.3, 2.0).unwrap() - 0.15).abs() < 1e-15);
        let a = harvester_current(3.0, 1.0, 0.5, 2.0, 1.0, 1.0).unwrap();
        let b = harvester_current(0.5, 2.0, 3.0, 1.0, 1.0, 1.0).unwrap();
        assert!((a + b).abs() < 1e-15);
        let p = harvester_performance(0.25, 2.0, 2.0, 1.0).unwrap();
        assert!((p.efficiency - 0.125).abs() < 1e-15);
        assert!((p.stopping_voltage - 1.0).abs() < 1e-15);
        assert!(harvester_performance(1.5, 2.0, 2.0, 1.0).is_err());
    }
}
