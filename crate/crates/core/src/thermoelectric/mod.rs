//! Steady-state electronic transport between leads.
//!
//! Units: `e = h = k_B = 1`, so `ħ = 1/2π`. Currents are particle currents
//! per unit time; a tunnel width `Γ` (an energy) corresponds to the rate
//! `Γ/ħ = 2πΓ`.

mod landauer;
mod rates;
mod superconducting;

pub use landauer::{
    figure_of_merit, landauer_currents, max_efficiency_ratio, onsager_matrix, transport_coefficients,
    FigureOfMerit, LandauerCurrents, OnsagerMatrix, TransportCoefficients,
};
pub use rates::{
    harvester_current, harvester_performance, rate_steady_state, HarvesterPerformance, LeadRates, RateModel,
    RateSteadyState,
};
pub use superconducting::{bcs_dos, josephson_photonic, sis_currents, JosephsonResonance, SisCurrents};

use crate::error::{Error, Result};

/// Electronic reservoir with inverse temperature and chemical potential.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LeadSpec {
    pub beta: f64,
    pub mu: f64,
}

impl LeadSpec {
    pub fn new(beta: f64, mu: f64) -> Result<Self> {
        if !(beta > 0.0) || !beta.is_finite() || !mu.is_finite() {
            return Err(Error::Domain(format!("lead needs finite β > 0 and finite μ, got β = {beta}, μ = {mu}")));
        }
        Ok(LeadSpec { beta, mu })
    }

    pub fn from_temperature(t: f64, mu: f64) -> Result<Self> {
        LeadSpec::new(1.0 / t, mu)
    }

    pub fn temperature(&self) -> f64 {
        1.0 / self.beta
    }

    /// Fermi occupation at energy `e`.
    pub fn occupation(&self, e: f64) -> f64 {
        crate::baths::fermi(self.beta, e - self.mu)
    }
}

impl TryFrom<crate::baths::BathSpec> for LeadSpec {
    type Error = Error;

    fn try_from(b: crate::baths::BathSpec) -> Result<Self> {
        let mu = b.mu.ok_or_else(|| Error::Domain("lead requires a chemical potential".into()))?;
        LeadSpec::new(b.beta, mu)
    }
}

/// Piecewise-linear `τ(E)` on a strictly increasing energy grid, zero outside.
#[derive(Debug, Clone, PartialEq)]
pub struct TransmissionTable {
    energy: Vec<f64>,
    tau: Vec<f64>,
}

impl TransmissionTable {
    pub fn new(energy: Vec<f64>, tau: Vec<f64>) -> Result<Self> {
        if energy.len() != tau.len() {
            return Err(Error::DimensionMismatch { expected: energy.len(), got: tau.len() });
        }
        if energy.len() < 2 {
            return Err(Error::Domain("transmission table needs at least two samples".into()));
        }
        if energy.iter().chain(&tau).any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        if energy.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Domain("table energies must be strictly increasing".into()));
        }
        if tau.iter().any(|&t| !(0.0..=1.0).contains(&t)) {
            return Err(Error::Domain("transmission must lie in [0, 1]".into()));
        }
        Ok(TransmissionTable { energy, tau })
    }

    pub fn energy(&self) -> &[f64] {
        &self.energy
    }

    pub fn eval(&self, e: f64) -> f64 {
        let n = self.energy.len();
        if e < self.energy[0] || e > self.energy[n - 1] {
            return 0.0;
        }
        let k = self.energy.partition_point(|&x| x <= e).clamp(1, n - 1);
        let s = (e - self.energy[k - 1]) / (self.energy[k] - self.energy[k - 1]);
        self.tau[k - 1] * (1.0 - s) + self.tau[k] * s
    }
}

/// Single-mode transmission probability `τ(E) ∈ [0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub enum TransmissionFunction {
    Constant { tau0: f64 },
    /// `τ₀` for `|E − E₀| < w/2`, zero elsewhere.
    Boxcar { center: f64, width: f64, tau0: f64 },
    /// `peak · (Γ/2)² / ((E − E₀)² + (Γ/2)²)`; `gamma` is the full width.
    Lorentzian { center: f64, gamma: f64, peak: f64 },
    Tabulated(TransmissionTable),
}

impl TransmissionFunction {
    /// Transmission of a single level at `ε` between leads of tunnel widths
    /// `Γ_L`, `Γ_R` (Breit-Wigner form).
    pub fn breit_wigner(level: f64, gamma_l: f64, gamma_r: f64) -> Result<Self> {
        if !(gamma_l > 0.0 && gamma_r > 0.0) {
            return Err(Error::Domain("tunnel widths must be positive".into()));
        }
        let g = gamma_l + gamma_r;
        TransmissionFunction::Lorentzian { center: level, gamma: g, peak: 4.0 * gamma_l * gamma_r / (g * g) }.validated()
    }

    pub fn validated(self) -> Result<Self> {
        let in_unit = |x: f64| (0.0..=1.0).contains(&x);
        match &self {
            TransmissionFunction::Constant { tau0 } if !in_unit(*tau0) => {
                Err(Error::Domain(format!("τ₀ must lie in [0, 1], got {tau0}")))
            }
            TransmissionFunction::Boxcar { center, width, tau0 } => {
                if !in_unit(*tau0) || !(*width > 0.0) || !center.is_finite() {
                    Err(Error::Domain("boxcar needs τ₀ ∈ [0, 1], positive width, finite center".into()))
                } else {
                    Ok(self)
                }
            }
            TransmissionFunction::Lorentzian { center, gamma, peak } => {
                if !in_unit(*peak) || !(*gamma > 0.0) || !center.is_finite() {
                    Err(Error::Domain("Lorentzian needs peak ∈ [0, 1], positive width, finite center".into()))
                } else {
                    Ok(self)
                }
            }
            _ => Ok(self),
        }
    }

    pub fn eval(&self, e: f64) -> f64 {
        match self {
            TransmissionFunction::Constant { tau0 } => *tau0,
            TransmissionFunction::Boxcar { center, width, tau0 } => {
                if (e - center).abs() < 0.5 * width {
                    *tau0
                } else {
                    0.0
                }
            }
            TransmissionFunction::Lorentzian { center, gamma, peak } => {
                let h = 0.5 * gamma;
                peak * h * h / ((e - center).powi(2) + h * h)
            }
            TransmissionFunction::Tabulated(t) => t.eval(e),
        }
    }

    /// Energies where `τ` has kinks, edges or sharp features inside `[lo, hi]`.
    fn features(&self, lo: f64, hi: f64) -> Vec<f64> {
        let raw: Vec<f64> = match self {
            TransmissionFunction::Constant { .. } => Vec::new(),
            TransmissionFunction::Boxcar { center, width, .. } => vec![center - 0.5 * width, center + 0.5 * width],
            TransmissionFunction::Lorentzian { center, gamma, .. } => {
                [-10.0, -3.0, -1.0, 0.0, 1.0, 3.0, 10.0].iter().map(|k| center + k * gamma).collect()
            }
            TransmissionFunction::Tabulated(t) => t.energy().to_vec(),
        };
        raw.into_iter().filter(|&x| x > lo && x < hi).collect()
    }
}
