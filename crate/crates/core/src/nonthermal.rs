//! Engines fuelled by non-thermal resources: the phaseonium (coherent
//! three-level atoms as hot bath), the Otto engine with a squeezed thermal
//! bath, population-inverted ("negative temperature") baths and ergotropy.

use crate::baths::squeezed_enhancement;
use crate::error::{Error, Result};
use crate::hilbert::{DensityMatrix, Operator};

/// Above this value of `3|ρ_bc| n_th` the first-order phaseonium formulas
/// are no longer trustworthy.
pub const PHASEONIUM_PERTURBATIVE_LIMIT: f64 = 0.1;

/// Phaseonium engine between a coherent hot bath at `T_h` and a thermal
/// sink at `T_c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseoniumSpec {
    pub t_h: f64,
    pub t_c: f64,
    pub n_th: f64,
    pub rho_bc_abs: f64,
    pub phi: f64,
}

impl PhaseoniumSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.t_h > 0.0 && self.t_c > 0.0) || !self.t_h.is_finite() || !self.t_c.is_finite() {
            return Err(Error::Domain("phaseonium temperatures must be positive".into()));
        }
        if !(self.n_th >= 0.0) || !self.n_th.is_finite() {
            return Err(Error::Domain(format!("n_th must be ≥ 0, got {}", self.n_th)));
        }
        if !(self.rho_bc_abs >= 0.0) || !self.rho_bc_abs.is_finite() {
            return Err(Error::Domain(format!("|ρ_bc| must be ≥ 0, got {}", self.rho_bc_abs)));
        }
        if !self.phi.is_finite() {
            return Err(Error::NonFinite);
        }
        Ok(())
    }

    /// `n_th ε cos φ` with the high-temperature `ε = 3|ρ_bc|`.
    fn shift(&self) -> f64 {
        self.n_th * phaseonium_epsilon_high_t(self.rho_bc_abs) * self.phi.cos()
    }

    /// True when `3|ρ_bc| n_th` leaves the perturbative window.
    pub fn perturbative_warning(&self) -> bool {
        3.0 * self.rho_bc_abs * self.n_th > PHASEONIUM_PERTURBATIVE_LIMIT
    }
}

/// Coherence parameter from the lower-level populations:
/// `ε = |ρ_bc| / ((P_b + P_c)/2)`. Reduces to `3|ρ_bc|` when all three
/// populations are `1/3`.
pub fn phaseonium_epsilon_exact(rho_bc_abs: f64, p_b: f64, p_c: f64) -> Result<f64> {
    let s = p_b + p_c;
    if !(s > 0.0) {
        return Err(Error::Domain("P_b + P_c must be positive".into()));
    }
    Ok(2.0 * rho_bc_abs / s)
}

/// High-temperature coherence parameter `ε = 3|ρ_bc|`.
pub fn phaseonium_epsilon_high_t(rho_bc_abs: f64) -> f64 {
    3.0 * rho_bc_abs
}

/// Effective radiation temperature `T_φ = T_h(1 − n_th ε cos φ)`.
pub fn phaseonium_temperature(spec: &PhaseoniumSpec) -> Result<f64> {
    spec.validate()?;
    Ok(spec.t_h * (1.0 - spec.shift()))
}

/// `η = 1 − (T_c/T_h)(1 + n_th ε cos φ) = η_C − 3(T_c/T_h) n_th |ρ_bc| cos φ`.
pub fn phaseonium_efficiency(spec: &PhaseoniumSpec) -> Result<f64> {
    spec.validate()?;
    Ok(1.0 - spec.t_c / spec.t_h * (1.0 + spec.shift()))
}

/// Stationary photon number of
/// `ṅ = α[2P_a(n + 1) − (P_b + P_c)(1 + ε cos φ) n]`, with `ε` from
/// [`phaseonium_epsilon_exact`].
///
/// To first order in `ε` this is `n_th − n_th(n_th + 1) ε cos φ`; the
/// familiar `n_th(1 − n_th ε cos φ)` is its large-`n_th` form.
pub fn phaseonium_photon_fixed_point(p_a: f64, p_b: f64, p_c: f64, rho_bc_abs: f64, phi: f64) -> Result<f64> {
    for (name, p) in [("P_a", p_a), ("P_b", p_b), ("P_c", p_c)] {
        if !(p >= 0.0) || !p.is_finite() {
            return Err(Error::Domain(format!("{name} must be ≥ 0, got {p}")));
        }
    }
    if p_a + p_b + p_c > 1.0 + 1e-12 {
        return Err(Error::Domain("populations sum above 1".into()));
    }
    if !(rho_bc_abs >= 0.0) || !phi.is_finite() {
        return Err(Error::Domain("coherence must be ≥ 0 with a finite phase".into()));
    }
    let eps = phaseonium_epsilon_exact(rho_bc_abs, p_b, p_c)?;
    let loss = (p_b + p_c) * (1.0 + eps * phi.cos());
    let gain = 2.0 * p_a;
    if loss <= gain {
        return Err(Error::Regime(format!(
            "gain {gain} reaches loss {loss}: the photon number grows without bound"
        )));
    }
    Ok(gain / (loss - gain))
}

/// Otto engine with a thermal cold bath (`β₁`, frequency `ω₁`) and a squeezed
/// hot bath (`β₂`, frequency `ω₂`, squeezing `r`). `Q*` are the adiabaticity
/// factors of the compression (`Q*₁`) and expansion (`Q*₂`) strokes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezedOttoSpec {
    pub omega1: f64,
    pub omega2: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub r: f64,
    pub q_star1: f64,
    pub q_star2: f64,
}

impl SqueezedOttoSpec {
    /// Adiabatic strokes (`Q* = 1`).
    pub fn adiabatic(omega1: f64, omega2: f64, beta1: f64, beta2: f64, r: f64) -> Self {
        SqueezedOttoSpec { omega1, omega2, beta1, beta2, r, q_star1: 1.0, q_star2: 1.0 }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.omega2 > self.omega1 && self.omega1 > 0.0) || !self.omega2.is_finite() {
            return Err(Error::Domain("need ω₂ > ω₁ > 0".into()));
        }
        if !(self.beta1 > 0.0 && self.beta2 > 0.0) || !self.beta1.is_finite() || !self.beta2.is_finite() {
            return Err(Error::Domain("inverse temperatures must be positive and finite".into()));
        }
        if !(self.r >= 0.0) || !self.r.is_finite() {
            return Err(Error::Domain(format!("squeezing r must be ≥ 0, got {}", self.r)));
        }
        if !(self.q_star1 >= 1.0 && self.q_star2 >= 1.0) {
            return Err(Error::Domain("adiabaticity factors Q* must be ≥ 1".into()));
        }
        Ok(())
    }
}

/// Energetics of one squeezed Otto cycle. `q_h` is absorbed from the
/// squeezed bath, `q_c` from the cold bath and `work = −(q_h + q_c)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezedOttoCycle {
    pub q_h: f64,
    pub q_c: f64,
    pub work: f64,
}

fn coth(x: f64) -> f64 {
    1.0 / x.tanh()
}

/// Stroke energies of the squeezed Otto cycle. The oscillator leaves the
/// cold bath with `⟨H⟩ = (ω₁/2)coth(β₁ω₁/2)`, is compressed to
/// `Q*₁(ω₂/2)coth(β₁ω₁/2)`, thermalizes to `(ω₂/2)coth(β₂ω₂/2)ΔH(r)` and is
/// expanded to `Q*₂(ω₁/2)coth(β₂ω₂/2)ΔH(r)`; `ΔH` uses `n_th` at `β₂ω₂`.
pub fn squeezed_otto_cycle(spec: &SqueezedOttoSpec) -> Result<SqueezedOttoCycle> {
    spec.validate()?;
    let c1 = coth(spec.beta1 * spec.omega1 / 2.0);
    let c2 = coth(spec.beta2 * spec.omega2 / 2.0);
    let n_th = 1.0 / (spec.beta2 * spec.omega2).exp_m1();
    let dh = squeezed_enhancement(spec.r, n_th)?;
    let e_a = spec.omega1 / 2.0 * c1;
    let e_b = spec.q_star1 * spec.omega2 / 2.0 * c1;
    let e_c = spec.omega2 / 2.0 * c2 * dh;
    let e_d = spec.q_star2 * spec.omega1 / 2.0 * c2 * dh;
    let q_h = e_c - e_b;
    let q_c = e_a - e_d;
    Ok(SqueezedOttoCycle { q_h, q_c, work: -(q_h + q_c) })
}

/// `η* = 1 − (ω₁/ω₂)[coth(β₁ω₁/2) − Q*₂coth(β₂ω₂/2)ΔH] / [Q*₁coth(β₁ω₁/2) − coth(β₂ω₂/2)ΔH]`.
///
/// Errors with [`Error::Regime`] unless heat enters from the squeezed bath
/// and net work is extracted.
pub fn squeezed_otto_efficiency(spec: &SqueezedOttoSpec) -> Result<f64> {
    let cyc = squeezed_otto_cycle(spec)?;
    if !(cyc.q_h > 0.0) || !(cyc.work < 0.0) {
        return Err(Error::Regime(format!(
            "not an engine: Q_h = {}, W = {}",
            cyc.q_h, cyc.work
        )));
    }
    Ok(-cyc.work / cyc.q_h)
}

fn check_betas(beta1: f64, beta2: f64, r: f64) -> Result<()> {
    if !(beta1 > beta2 && beta2 > 0.0) || !beta1.is_finite() {
        return Err(Error::Domain("need β₁ > β₂ > 0".into()));
    }
    if !(r >= 0.0) || !r.is_finite() {
        return Err(Error::Domain(format!("squeezing r must be ≥ 0, got {r}")));
    }
    Ok(())
}

/// High-temperature efficiency at maximum power,
/// `1 − sqrt(β₂ / (β₁(1 + 2 sinh²r)))`.
pub fn squeezed_eff_max_power(beta1: f64, beta2: f64, r: f64) -> Result<f64> {
    check_betas(beta1, beta2, r)?;
    Ok(1.0 - (beta2 / (beta1 * (1.0 + 2.0 * r.sinh().powi(2)))).sqrt())
}

/// Carnot bound with squeezing counted as a resource,
/// `1 − β₂ / (β₁(1 + 2 sinh²r))`.
pub fn generalized_carnot(beta1: f64, beta2: f64, r: f64) -> Result<f64> {
    check_betas(beta1, beta2, r)?;
    Ok(1.0 - beta2 / (beta1 * (1.0 + 2.0 * r.sinh().powi(2))))
}

/// Largest work extractable from a squeezed bath by a thermal oscillator,
/// `ω(2n_th + 1) sinh²r`.
pub fn squeezed_max_work(omega: f64, n_th: f64, r: f64) -> Result<f64> {
    if !(n_th >= 0.0) || !(omega >= 0.0) || !r.is_finite() {
        return Err(Error::Domain("need ω ≥ 0, n_th ≥ 0 and finite r".into()));
    }
    Ok(omega * (2.0 * n_th + 1.0) * r.sinh().powi(2))
}

/// Upper bound `tanh(2r) ΔA` on work from a two-stroke cycle with a single
/// squeezed bath, given the change `ΔA` in asymmetry.
pub fn squeezed_work_bound(r: f64, delta_asymmetry: f64) -> f64 {
    (2.0 * r).tanh() * delta_asymmetry
}

/// Entropy flux from a squeezed thermal bath,
/// `Φ̇ = β(cosh 2r · Q̇ − sinh 2r · Ȧ)`, for a heat flow `Q̇ = tr[H ρ̇]` and
/// asymmetry flow `Ȧ = tr[A ρ̇]` supplied by the caller. The asymmetry
/// operator's phase reference is left to the caller.
pub fn squeezed_entropy_flux(beta: f64, r: f64, q_dot: f64, a_dot: f64) -> f64 {
    beta * ((2.0 * r).cosh() * q_dot - (2.0 * r).sinh() * a_dot)
}

/// Maximum work extractable by a unitary: `tr[ρH] − Σ_k λ_k↓ ε_k↑`.
///
/// Degenerate levels are paired in index order; the sum is unaffected
/// because any permutation inside a degenerate block gives the same value.
pub fn ergotropy(rho: &DensityMatrix, h: &Operator) -> Result<f64> {
    if h.dim() != rho.dim() {
        return Err(Error::DimensionMismatch { expected: rho.dim(), got: h.dim() });
    }
    let energies = h.eigenvalues()?;
    let mut lambda = rho.eigenvalues();
    lambda.sort_by(|a, b| b.total_cmp(a));
    let passive: f64 = lambda.iter().zip(&energies).map(|(l, e)| l * e).sum();
    let mean = crate::hilbert::expectation_real(rho, h)?;
    Ok((mean - passive).max(0.0))
}

/// Inverse temperature of a two-level population with excited weight `p⁺`:
/// `β = ln[(1 − p⁺)/p⁺] / ω`. Negative for inverted populations.
pub fn negative_temperature_from_population(p_plus: f64, omega: f64) -> Result<f64> {
    if !(omega > 0.0) || !omega.is_finite() {
        return Err(Error::Domain(format!("gap must be positive, got {omega}")));
    }
    if p_plus == 0.0 || p_plus == 1.0 {
        return Err(Error::Divergence(format!("p⁺ = {p_plus} has infinite |β|")));
    }
    if !(p_plus > 0.0 && p_plus < 1.0) {
        return Err(Error::Domain(format!("p⁺ must lie in (0, 1), got {p_plus}")));
    }
    Ok(((1.0 - p_plus) / p_plus).ln() / omega)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{gibbs_state, qubit};
    use std::f64::consts::{FRAC_PI_2, PI};

    fn fig6(phi: f64) -> PhaseoniumSpec {
        PhaseoniumSpec { t_h: 1.0, t_c: 0.85, n_th: 1e3, rho_bc_abs: 3e-6, phi }
    }

    #[test]
    fn phaseonium_examples() {
        let t = phaseonium_temperature(&PhaseoniumSpec { t_c: 0.5, ..fig6(PI) }).unwrap();
        assert!((t - 1.009).abs() < 1e-12);
        assert!((phaseonium_temperature(&fig6(FRAC_PI_2)).unwrap() - 1.0).abs() < 1e-15);
        let eta = phaseonium_efficiency(&fig6(PI)).unwrap();
        assert!((eta - 0.15765).abs() < 1e-12);
        assert!((phaseonium_efficiency(&fig6(FRAC_PI_2)).unwrap() - 0.15).abs() < 1e-12);
        let flat = PhaseoniumSpec { rho_bc_abs: 0.0, ..fig6(1.3) };
        assert!((phaseonium_efficiency(&flat).unwrap() - 0.15).abs() < 1e-15);
        assert!(!fig6(PI).perturbative_warning());
    }

    #[test]
    fn photon_fixed_point() {
        let (pa, pb, pc) = (0.3, 0.33, 0.37);
        let n_th = 1.0 / ((pb + pc) / (2.0 * pa) - 1.0);
        assert!((phaseonium_photon_fixed_point(pa, pb, pc, 0.0, 0.0).unwrap() - n_th).abs() < 1e-12);
        let n = phaseonium_photon_fixed_point(pa, pb, pc, 0.01, 0.4).unwrap();
        let eps = phaseonium_epsilon_exact(0.01, pb, pc).unwrap();
        let rate = 2.0 * pa * (n + 1.0) - (pb + pc) * (1.0 + eps * 0.4f64.cos()) * n;
        assert!(rate.abs() < 1e-12);
        assert!(matches!(phaseonium_photon_fixed_point(0.5, 0.25, 0.25, 0.0, 0.0), Err(Error::Regime(_))));
    }

    #[test]
    fn squeezed_reduces_to_otto() {
        let s = SqueezedOttoSpec::adiabatic(1.0, 2.0, 2.0, 0.5, 0.0);
        assert!((squeezed_otto_efficiency(&s).unwrap() - 0.5).abs() < 1e-14);
    }

    #[test]
    fn squeezed_closed_forms() {
        assert!((squeezed_eff_max_power(5.0, 1.0, 0.0).unwrap() - 0.552786).abs() < 1e-6);
        let s1 = 1.0 + 2.0 * 1f64.sinh().powi(2);
        assert!((s1 - 3.76220).abs() < 1e-5);
        assert!((squeezed_eff_max_power(5.0, 1.0, 1.0).unwrap() - (1.0 - (0.2 / s1).sqrt())).abs() < 1e-15);
        assert!((squeezed_eff_max_power(5.0, 1.0, 1.0).unwrap() - 0.769443).abs() < 1e-5);
        assert!((squeezed_eff_max_power(5.0, 1.0, 30.0).unwrap() - 1.0).abs() < 1e-12);
        assert!((generalized_carnot(5.0, 1.0, 0.0).unwrap() - 0.8).abs() < 1e-15);
        assert!((generalized_carnot(5.0, 1.0, 1.0).unwrap() - 0.946839).abs() < 1e-6);
        assert!((squeezed_max_work(1.0, 1.0, 1.0).unwrap() - 3.0 * 1f64.sinh().powi(2)).abs() < 1e-14);
        assert!((squeezed_max_work(1.0, 1.0, 1.0).unwrap() - 4.14273).abs() < 1e-3);
        assert_eq!(squeezed_max_work(1.0, 3.0, 0.0).unwrap(), 0.0);
        assert!(generalized_carnot(1.0, 2.0, 0.0).is_err());
    }

    #[test]
    fn entropy_flux_reduces_to_clausius() {
        assert!((squeezed_entropy_flux(2.0, 0.0, 0.3, 7.0) - 0.6).abs() < 1e-15);
    }

    #[test]
    fn ergotropy_examples() {
        let h = qubit::excitation();
        let g = gibbs_state(&h, 1.3).unwrap();
        assert!(ergotropy(&g, &h).unwrap() < 1e-12);
        let up = DensityMatrix::basis(1, 2).unwrap();
        assert!((ergotropy(&up, &h.scale(2.5)).unwrap() - 2.5).abs() < 1e-12);
        let inv = DensityMatrix::from_diagonal(&[0.3, 0.7]).unwrap();
        assert!((ergotropy(&inv, &h).unwrap() - 0.4).abs() < 1e-12);
    }

    #[test]
    fn negative_temperature() {
        assert_eq!(negative_temperature_from_population(0.5, 1.0).unwrap(), 0.0);
        let b = negative_temperature_from_population(0.75, 1.0).unwrap();
        assert!((b + 1.09861).abs() < 1e-5);
        assert!(matches!(negative_temperature_from_population(1.0, 1.0), Err(Error::Divergence(_))));
    }
}
