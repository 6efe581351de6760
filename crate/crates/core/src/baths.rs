//! Reservoir descriptors: occupations, spectral densities, bath correlation
//! functions, squeezing factors and the polaron renormalization.
//!
//! Spectral densities use the continuum convention
//! `J(ω) = Σ_k |g_k|² δ(ω − ω_k)` with unit mass. Under this convention the
//! polaron displacement sum `Σ |α_k|² f(ω_k)` with `α_k = g_k/ω_k` becomes
//! `∫ dω J(ω)/ω² f(ω)`. The normalization of `g_k` is a modeling choice: the
//! discrete form does not fix it.

use std::f64::consts::PI;
use std::path::Path;

use crate::error::{Error, Result};
use crate::hilbert::C64;
use crate::numerics::{
    integrate_semi_infinite_algebraic, integrate_with_breaks, DEFAULT_QUAD_TOL,
};

/// Squeezing parameters of a bosonic reservoir.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Squeezing {
    pub r: f64,
    pub theta: f64,
}

/// Inverse temperature plus optional chemical potential and squeezing.
///
/// `beta` may be negative (population-inverted reservoirs) or infinite
/// (zero temperature) where the consuming operation allows it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BathSpec {
    pub beta: f64,
    pub mu: Option<f64>,
    pub squeezing: Option<Squeezing>,
}

impl BathSpec {
    pub fn thermal(beta: f64) -> Self {
        BathSpec { beta, mu: None, squeezing: None }
    }

    pub fn from_temperature(t: f64) -> Result<Self> {
        if !(t > 0.0) {
            return Err(Error::Domain(format!("temperature must be positive, got {t}")));
        }
        Ok(BathSpec::thermal(1.0 / t))
    }

    /// Fermionic lead at inverse temperature `beta`, chemical potential `mu`.
    pub fn lead(beta: f64, mu: f64) -> Self {
        BathSpec { beta, mu: Some(mu), squeezing: None }
    }

    pub fn with_squeezing(mut self, r: f64, theta: f64) -> Result<Self> {
        if !(r >= 0.0) || !theta.is_finite() {
            return Err(Error::Domain(format!("squeezing needs r ≥ 0 and finite θ, got ({r}, {theta})")));
        }
        self.squeezing = Some(Squeezing { r, theta });
        Ok(self)
    }

    pub fn temperature(&self) -> f64 {
        1.0 / self.beta
    }
}

/// `1/(e^{βω} − 1)`.
pub fn bose_occupation(omega: f64, beta: f64) -> Result<f64> {
    let x = beta * omega;
    if x == 0.0 || x.is_nan() {
        return Err(Error::Divergence(format!("Bose occupation at βω = {x}")));
    }
    Ok(1.0 / x.exp_m1())
}

/// Fermi-Dirac function `1/(e^{β(E−μ)} + 1)` of a lead with a chemical
/// potential; `β = ∞` gives the step with value ½ at `E = μ`.
pub fn fermi_distribution(e: f64, lead: &BathSpec) -> Result<f64> {
    let mu = lead
        .mu
        .ok_or_else(|| Error::Domain("Fermi distribution needs a chemical potential".into()))?;
    Ok(fermi(lead.beta, e - mu))
}

/// Fermi function of `β·x` without a lead descriptor.
pub fn fermi(beta: f64, x: f64) -> f64 {
    if x == 0.0 {
        return 0.5;
    }
    let y = beta * x;
    if y > 0.0 {
        let e = (-y).exp();
        e / (1.0 + e)
    } else {
        1.0 / (1.0 + y.exp())
    }
}

/// Ratio of squeezed to thermal occupation, `1 + (2 + 1/n_th)·sinh²r`.
pub fn squeezed_enhancement(r: f64, n_th: f64) -> Result<f64> {
    if !(n_th > 0.0) {
        return Err(Error::Domain(format!("thermal occupation must be positive, got {n_th}")));
    }
    Ok(1.0 + (2.0 + 1.0 / n_th) * r.sinh().powi(2))
}

/// Bosonic spectral density `J(ω)` on `ω ≥ 0` (unit mass).
#[derive(Debug, Clone, PartialEq)]
pub enum SpectralDensity {
    /// `γ ω e^{−ω/ω_c}`.
    Ohmic { gamma: f64, omega_c: f64 },
    /// `d₁ γ₁ ω / ((ω² − ω₁²)² + γ₁² ω²)`.
    Lorentzian { d1: f64, gamma1: f64, omega1: f64 },
    /// Piecewise-linear interpolation of `(ω, J)` samples, zero outside the
    /// sampled range.
    Tabulated(Table),
}

/// Strictly increasing frequency grid with non-negative values.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    omega: Vec<f64>,
    value: Vec<f64>,
}

impl Table {
    pub fn new(omega: Vec<f64>, value: Vec<f64>) -> Result<Self> {
        if omega.len() != value.len() {
            return Err(Error::DimensionMismatch { expected: omega.len(), got: value.len() });
        }
        if omega.len() < 2 {
            return Err(Error::Domain("table needs at least two samples".into()));
        }
        if omega.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Domain("table frequencies must be strictly increasing".into()));
        }
        if omega[0] < 0.0 {
            return Err(Error::Domain("table frequencies must be non-negative".into()));
        }
        if value.iter().chain(omega.iter()).any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        if value.iter().any(|&v| v < 0.0) {
            return Err(Error::Domain("spectral density must be non-negative".into()));
        }
        Ok(Table { omega, value })
    }

    /// Reads two comma-separated columns `ω, J`. Blank lines, `#` comments and
    /// a non-numeric header line are skipped.
    pub fn from_csv_str(text: &str) -> Result<Self> {
        let mut omega = Vec::new();
        let mut value = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let cols: Vec<&str> = line.split(',').map(str::trim).collect();
            if cols.len() != 2 {
                return Err(Error::Domain(format!("line {}: expected 2 columns", lineno + 1)));
            }
            match (cols[0].parse::<f64>(), cols[1].parse::<f64>()) {
                (Ok(w), Ok(j)) => {
                    omega.push(w);
                    value.push(j);
                }
                _ if omega.is_empty() => continue,
                _ => return Err(Error::Domain(format!("line {}: not numeric", lineno + 1))),
            }
        }
        Table::new(omega, value)
    }

    pub fn from_csv_path(path: &Path) -> Result<Self> {
        Table::from_csv_str(&std::fs::read_to_string(path)?)
    }

    pub fn omega(&self) -> &[f64] {
        &self.omega
    }

    pub fn values(&self) -> &[f64] {
        &self.value
    }

    pub fn eval(&self, w: f64) -> f64 {
        let n = self.omega.len();
        if w < self.omega[0] || w > self.omega[n - 1] {
            return 0.0;
        }
        let k = self.omega.partition_point(|&x| x <= w).clamp(1, n - 1);
        let (w0, w1) = (self.omega[k - 1], self.omega[k]);
        let s = (w - w0) / (w1 - w0);
        self.value[k - 1] * (1.0 - s) + self.value[k] * s
    }

    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Table::new(self.omega.clone(), self.value.iter().map(|v| v * factor).collect())
    }
}

impl SpectralDensity {
    pub fn eval(&self, w: f64) -> f64 {
        if w < 0.0 {
            return 0.0;
        }
        match self {
            SpectralDensity::Ohmic { gamma, omega_c } => gamma * w * (-w / omega_c).exp(),
            SpectralDensity::Lorentzian { d1, gamma1, omega1 } => {
                let a = w * w - omega1 * omega1;
                d1 * gamma1 * w / (a * a + gamma1 * gamma1 * w * w)
            }
            SpectralDensity::Tabulated(t) => t.eval(w),
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            SpectralDensity::Ohmic { gamma, omega_c } => {
                if !(*gamma >= 0.0) || !(*omega_c > 0.0) {
                    return Err(Error::Domain("Ohmic density needs γ ≥ 0 and ω_c > 0".into()));
                }
            }
            SpectralDensity::Lorentzian { d1, gamma1, omega1 } => {
                if !(*d1 >= 0.0) || !(*gamma1 > 0.0) || !(*omega1 >= 0.0) {
                    return Err(Error::Domain("Lorentzian density needs d₁ ≥ 0, γ₁ > 0, ω₁ ≥ 0".into()));
                }
            }
            SpectralDensity::Tabulated(_) => {}
        }
        Ok(())
    }

    fn is_zero(&self) -> bool {
        match self {
            SpectralDensity::Ohmic { gamma, .. } => *gamma == 0.0,
            SpectralDensity::Lorentzian { d1, .. } => *d1 == 0.0,
            SpectralDensity::Tabulated(t) => t.value.iter().all(|&v| v == 0.0),
        }
    }

    /// Characteristic frequency scale, used for the small-ω series switch.
    fn scale(&self) -> f64 {
        match self {
            SpectralDensity::Ohmic { omega_c, .. } => *omega_c,
            SpectralDensity::Lorentzian { gamma1, omega1, .. } => omega1.max(*gamma1),
            SpectralDensity::Tabulated(t) => *t.omega.last().expect("non-empty"),
        }
    }

    /// Integral of `f(ω)·J(ω)` over `[0, ∞)`, with `f` bounded.
    fn integrate_weighted<F: Fn(f64) -> f64>(&self, f: F, tol: f64) -> Result<f64> {
        let mut g = |w: f64| self.eval(w) * f(w);
        match self {
            SpectralDensity::Ohmic { omega_c, .. } => {
                // e^{−60} relative tail is below any useful tolerance
                let top = 60.0 * omega_c;
                let breaks: Vec<f64> = (0..=12).map(|k| top * k as f64 / 12.0).collect();
                Ok(integrate_with_breaks(&mut g, &breaks, tol)?.value)
            }
            SpectralDensity::Lorentzian { gamma1, omega1, .. } => {
                let top = 20.0 * omega1.max(*gamma1);
                let mut breaks = vec![0.0, top];
                for b in [omega1 - gamma1, *omega1, omega1 + gamma1] {
                    if b > 0.0 && b < top {
                        breaks.push(b);
                    }
                }
                let body = integrate_with_breaks(&mut g, &breaks, 0.5 * tol)?.value;
                let tail = integrate_semi_infinite_algebraic(&mut g, top, top, 0.5 * tol)?.value;
                Ok(body + tail)
            }
            SpectralDensity::Tabulated(t) => Ok(integrate_with_breaks(&mut g, &t.omega, tol)?.value),
        }
    }
}

/// `coth(βω/2)`, switched to its Laurent series for `ω < 1e-6·scale`.
fn coth_half(beta: f64, w: f64, scale: f64) -> f64 {
    if beta.is_infinite() {
        return 1.0;
    }
    let x = 0.5 * beta * w;
    if w < 1e-6 * scale {
        1.0 / x + x / 3.0
    } else {
        1.0 / x.tanh()
    }
}

/// Caldeira-Leggett bath correlation function
/// `L(t) = (1/π) ∫₀^∞ dω J(ω) [coth(βω/2) cos ωt − i sin ωt]`
/// at the default absolute tolerance.
pub fn bath_correlation(j: &SpectralDensity, beta: f64, t: f64) -> Result<C64> {
    bath_correlation_with_tol(j, beta, t, DEFAULT_QUAD_TOL)
}

/// [`bath_correlation`] with an explicit absolute tolerance.
pub fn bath_correlation_with_tol(j: &SpectralDensity, beta: f64, t: f64, tol: f64) -> Result<C64> {
    j.validate()?;
    if !(beta > 0.0) {
        return Err(Error::Domain(format!("bath correlation needs β > 0, got {beta}")));
    }
    if j.is_zero() {
        return Ok(C64::new(0.0, 0.0));
    }
    let scale = j.scale();
    let re = j.integrate_weighted(|w| coth_half(beta, w, scale) * (w * t).cos(), 0.5 * PI * tol)?;
    let im = if t == 0.0 {
        0.0
    } else {
        -j.integrate_weighted(|w| (w * t).sin(), 0.5 * PI * tol)?
    };
    Ok(C64::new(re / PI, im / PI))
}

/// Polaron renormalization `⟨B⟩ = exp[−½ ∫ dω J(ω)/ω² coth(βω/2)]`.
///
/// Any `J` that is linear (or larger) at small ω makes the integral diverge;
/// an infrared-regularized table (lowest sample above zero) or a super-Ohmic
/// table is required.
pub fn polaron_factor(j: &SpectralDensity, beta: f64) -> Result<f64> {
    polaron_factor_with_tol(j, beta, DEFAULT_QUAD_TOL)
}

pub fn polaron_factor_with_tol(j: &SpectralDensity, beta: f64, tol: f64) -> Result<f64> {
    j.validate()?;
    if !(beta > 0.0) {
        return Err(Error::Domain(format!("polaron factor needs β > 0, got {beta}")));
    }
    if j.is_zero() {
        return Ok(1.0);
    }
    let infrared = || {
        Error::Divergence(
            "infrared divergence: ∫ J(ω)/ω² coth(βω/2) diverges at ω → 0 for this spectral density".into(),
        )
    };
    match j {
        SpectralDensity::Ohmic { .. } | SpectralDensity::Lorentzian { .. } => return Err(infrared()),
        SpectralDensity::Tabulated(t) => {
            if t.omega[0] == 0.0 {
                // linear interpolation from the origin behaves like ω (or a
                // constant) there, so the weight 1/ω³ is not integrable
                let j_first = t.value[0].max(t.value[1]);
                if j_first > 0.0 {
                    return Err(infrared());
                }
            }
        }
    }
    let scale = j.scale();
    let integral = j.integrate_weighted(|w| coth_half(beta, w, scale) / (w * w), tol)?;
    if !integral.is_finite() {
        return Err(infrared());
    }
    Ok((-0.5 * integral).exp())
}
