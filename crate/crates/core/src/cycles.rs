//! Quasistatic stroke engines (Carnot, Otto) and closed-form cycle
//! efficiencies.
//!
//! Sign convention: `W < 0` is work extracted from the medium, `Q > 0` is
//! heat absorbed by the medium, so the first law over a cycle reads
//! `W = −(Q_h + Q_c)`.
//!
//! Adiabatic strokes are the quantum-adiabatic idealization: populations are
//! carried unchanged along the instantaneous eigenbasis, with eigenvalues
//! sorted ascending at each endpoint. Level crossings along the control path
//! are detected and flagged, never resolved.

use std::fmt;
use std::sync::Arc;

use crate::baths::bose_occupation;
use crate::error::{Error, Result};
use crate::hilbert::{qubit, tensor_product, Operator};

/// Operating regime of a cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Net work extracted with heat drawn from the hot bath.
    Engine,
    /// Work consumed to draw heat out of the cold bath.
    Refrigerator,
    /// Any other sign pattern (heater, accelerator, or the null cycle).
    HeaterOrAccelerator,
}

impl Mode {
    pub fn classify(w: f64, q_h: f64, q_c: f64) -> Mode {
        if w < 0.0 && q_h > 0.0 {
            Mode::Engine
        } else if w > 0.0 && q_c > 0.0 {
            Mode::Refrigerator
        } else {
            Mode::HeaterOrAccelerator
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Engine => "engine",
            Mode::Refrigerator => "refrigerator",
            Mode::HeaterOrAccelerator => "heater",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Per-cycle energetics.
#[derive(Debug, Clone, PartialEq)]
pub struct CycleResult {
    pub work: f64,
    pub q_h: f64,
    pub q_c: f64,
    /// `−W/Q_h`, present only in engine mode.
    pub efficiency: Option<f64>,
    /// `Q_c/W`, present only in refrigerator mode.
    pub cop: Option<f64>,
    pub mode: Mode,
    /// Set when the eigenvalue ordering changes along the adiabatic path.
    pub level_crossing: bool,
}

impl CycleResult {
    fn from_heats(q_h: f64, q_c: f64) -> CycleResult {
        let work = -(q_h + q_c);
        let mode = Mode::classify(work, q_h, q_c);
        let efficiency = (mode == Mode::Engine).then(|| -work / q_h);
        let cop = (mode == Mode::Refrigerator).then(|| q_c / work);
        CycleResult { work, q_h, q_c, efficiency, cop, mode, level_crossing: false }
    }
}

/// Single-mode working media with closed-form Otto energetics.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Medium {
    /// Two-level system, gap as control.
    Tls,
    /// Harmonic oscillator, frequency as control.
    Ho,
}

fn positive(name: &str, x: f64) -> Result<()> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("{name} must be positive and finite, got {x}")));
    }
    Ok(())
}

fn tls_excitation(gap: f64, beta: f64) -> f64 {
    1.0 / (1.0 + (beta * gap).exp())
}

/// Quasistatic Otto cycle between gaps `gap_c` (cold isochore) and `gap_h`
/// (hot isochore).
///
/// `Q_h = Δ_h(n_h − n_c)`, `Q_c = Δ_c(n_c − n_h)`, where `n_x` is the excited
/// population (TLS) or mean quantum number (HO) at bath `x`.
pub fn otto_quasistatic(medium: Medium, gap_c: f64, gap_h: f64, t_h: f64, t_c: f64) -> Result<CycleResult> {
    positive("cold gap", gap_c)?;
    positive("hot gap", gap_h)?;
    positive("T_h", t_h)?;
    positive("T_c", t_c)?;
    let (n_h, n_c) = match medium {
        Medium::Tls => (tls_excitation(gap_h, 1.0 / t_h), tls_excitation(gap_c, 1.0 / t_c)),
        Medium::Ho => (bose_occupation(gap_h, 1.0 / t_h)?, bose_occupation(gap_c, 1.0 / t_c)?),
    };
    let mut r = CycleResult::from_heats(gap_h * (n_h - n_c), gap_c * (n_c - n_h));
    if r.mode == Mode::Engine {
        r.efficiency = Some(1.0 - gap_c / gap_h);
    }
    Ok(r)
}

/// Quasistatic Carnot cycle of a TLS with levels `±ε`.
///
/// The hot isotherm runs `ε_A → ε_B`; the adiabats fix `ε_C = ε_B T_c/T_h`
/// and `ε_D = ε_A T_c/T_h`. With `Z = 2cosh(β_h ε)`,
/// `W = η_C [T_h ln(Z_A/Z_B) + ε_B tanh(β_h ε_B) − ε_A tanh(β_h ε_A)]`,
/// which equals `−(T_h − T_c) ΔS_h`. The efficiency is always `η_C`.
pub fn carnot_quasistatic_tls(eps_a: f64, eps_b: f64, t_h: f64, t_c: f64) -> Result<CycleResult> {
    positive("ε_A", eps_a)?;
    positive("ε_B", eps_b)?;
    positive("T_h", t_h)?;
    positive("T_c", t_c)?;
    if eps_b > eps_a {
        return Err(Error::Domain(format!("Carnot cycle needs ε_A ≥ ε_B, got {eps_a} < {eps_b}")));
    }
    if t_c > t_h {
        return Err(Error::Domain(format!("Carnot cycle needs T_h ≥ T_c, got {t_h} < {t_c}")));
    }
    let beta = 1.0 / t_h;
    let eta_c = 1.0 - t_c / t_h;
    // ln cosh(x) without overflow
    let ln_cosh = |x: f64| x.abs() + (-2.0 * x.abs()).exp().ln_1p() - std::f64::consts::LN_2;
    let entropy = |eps: f64| {
        let x = beta * eps;
        std::f64::consts::LN_2 + ln_cosh(x) - x * x.tanh()
    };
    let ds_h = entropy(eps_b) - entropy(eps_a);
    let work = eta_c
        * (t_h * (ln_cosh(beta * eps_a) - ln_cosh(beta * eps_b)) + eps_b * (beta * eps_b).tanh()
            - eps_a * (beta * eps_a).tanh());
    let q_h = t_h * ds_h;
    let q_c = -t_c * ds_h;
    let mode = Mode::classify(work, q_h, q_c);
    let cop = (mode == Mode::Refrigerator).then(|| q_c / work);
    Ok(CycleResult { work, q_h, q_c, efficiency: Some(eta_c), cop, mode, level_crossing: false })
}

/// Hamiltonian family `λ ↦ H(λ)`.
#[derive(Clone)]
pub struct ParametrizedHamiltonian(Arc<dyn Fn(f64) -> Result<Operator> + Send + Sync>);

impl ParametrizedHamiltonian {
    pub fn new<F>(f: F) -> Self
    where
        F: Fn(f64) -> Result<Operator> + Send + Sync + 'static,
    {
        ParametrizedHamiltonian(Arc::new(f))
    }

    pub fn at(&self, lambda: f64) -> Result<Operator> {
        (self.0)(lambda)
    }
}

impl fmt::Debug for ParametrizedHamiltonian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("ParametrizedHamiltonian(..)")
    }
}

/// Two-spin Lipkin-Meshkov-Glick Hamiltonian
/// `−(J/4)[σˣσˣ + γσʸσʸ] − (h/2)[σᶻ₁ + σᶻ₂] − J(1+γ)/4`.
pub fn lmg_hamiltonian(j: f64, gamma: f64, h: f64) -> Operator {
    let xx = tensor_product(&qubit::sigma_x(), &qubit::sigma_x());
    let yy = tensor_product(&qubit::sigma_y(), &qubit::sigma_y());
    let id2 = Operator::identity(2);
    let zsum = tensor_product(&qubit::sigma_z(), &id2) + tensor_product(&id2, &qubit::sigma_z());
    (xx + yy.scale(gamma)).scale(-0.25 * j) - zsum.scale(0.5 * h) - Operator::identity(4).scale(0.25 * j * (1.0 + gamma))
}

/// Working medium with a scalar control `λ`: the gap (TLS), the frequency
/// (HO), the field `h` (LMG) or the argument of a user family.
#[derive(Debug, Clone)]
pub enum WorkingMedium {
    Tls,
    Ho,
    Lmg { j: f64, gamma: f64 },
    Generic(ParametrizedHamiltonian),
}

/// Number of interior points used to scan the adiabatic path for crossings.
const CROSSING_SCAN_POINTS: usize = 65;

impl WorkingMedium {
    fn hamiltonian(&self, lambda: f64) -> Result<Option<Operator>> {
        match self {
            WorkingMedium::Tls | WorkingMedium::Ho => Ok(None),
            WorkingMedium::Lmg { j, gamma } => Ok(Some(lmg_hamiltonian(*j, *gamma, lambda))),
            WorkingMedium::Generic(f) => f.at(lambda).map(Some),
        }
    }
}

/// Sorted Boltzmann populations of an ascending spectrum.
fn boltzmann(levels: &[f64], beta: f64) -> Vec<f64> {
    let e0 = levels[0];
    let w: Vec<f64> = levels.iter().map(|&e| (-beta * (e - e0)).exp()).collect();
    let z: f64 = w.iter().sum();
    w.into_iter().map(|x| x / z).collect()
}

/// Oscillator levels `(n + ½)ω`, truncated where the Boltzmann weight at the
/// hotter stroke falls below 1e-18.
fn ho_levels(omega: f64, n: usize) -> Vec<f64> {
    (0..n).map(|k| (k as f64 + 0.5) * omega).collect()
}

/// Detects eigenvalue reordering between `λ_a` and `λ_b` by following the
/// eigenvector of each sorted level through a fine path.
fn crosses(h: &WorkingMedium, lambda_a: f64, lambda_b: f64) -> Result<bool> {
    let cluster_tol = 1e-9;
    let mut prev: Option<(Vec<f64>, nalgebra::DMatrix<crate::hilbert::C64>)> = None;
    for s in 0..=CROSSING_SCAN_POINTS {
        let lam = lambda_a + (lambda_b - lambda_a) * s as f64 / CROSSING_SCAN_POINTS as f64;
        let op = h.hamiltonian(lam)?.expect("operator-backed medium");
        let (vals, vecs) = op.eigh()?;
        if let Some((pv, pvecs)) = &prev {
            let n = vals.len();
            for k in 0..n {
                // weight of previous level-k vector inside the current
                // degenerate cluster holding sorted index k
                let weight: f64 = (0..n)
                    .filter(|&l| (vals[l] - vals[k]).abs() <= cluster_tol * (1.0 + vals[k].abs()))
                    .map(|l| (pvecs.column(k).adjoint() * vecs.column(l))[(0, 0)].norm_sqr())
                    .sum();
                let prev_cluster_degenerate = (0..n)
                    .filter(|&l| l != k)
                    .any(|l| (pv[l] - pv[k]).abs() <= cluster_tol * (1.0 + pv[k].abs()));
                if weight < 0.5 && !prev_cluster_degenerate {
                    return Ok(true);
                }
            }
        }
        prev = Some((vals, vecs));
    }
    Ok(false)
}

/// Quasistatic Otto cycle on a general medium: thermalize at `λ_c, T_c`,
/// carry populations to `λ_h`, thermalize at `T_h`, carry back.
pub fn generic_quasistatic_otto(
    medium: &WorkingMedium,
    lambda_c: f64,
    lambda_h: f64,
    t_h: f64,
    t_c: f64,
) -> Result<CycleResult> {
    positive("T_h", t_h)?;
    positive("T_c", t_c)?;
    let (beta_h, beta_c) = (1.0 / t_h, 1.0 / t_c);
    let (levels_c, levels_h, crossing) = match medium {
        WorkingMedium::Tls => {
            positive("cold gap", lambda_c)?;
            positive("hot gap", lambda_h)?;
            (vec![0.0, lambda_c], vec![0.0, lambda_h], false)
        }
        WorkingMedium::Ho => {
            positive("cold frequency", lambda_c)?;
            positive("hot frequency", lambda_h)?;
            let x = (beta_c * lambda_c).min(beta_h * lambda_h);
            let n = ((42.0 / x).ceil() as usize + 16).min(200_000);
            (ho_levels(lambda_c, n), ho_levels(lambda_h, n), false)
        }
        _ => {
            let hc = medium.hamiltonian(lambda_c)?.expect("operator medium");
            let hh = medium.hamiltonian(lambda_h)?.expect("operator medium");
            let crossing = lambda_c != lambda_h && crosses(medium, lambda_c, lambda_h)?;
            (hc.eigenvalues()?, hh.eigenvalues()?, crossing)
        }
    };
    if levels_c.len() != levels_h.len() {
        return Err(Error::DimensionMismatch { expected: levels_c.len(), got: levels_h.len() });
    }
    let p_c = boltzmann(&levels_c, beta_c);
    let p_h = boltzmann(&levels_h, beta_h);
    let q_h: f64 = levels_h.iter().zip(p_h.iter().zip(&p_c)).map(|(e, (a, b))| e * (a - b)).sum();
    let q_c: f64 = levels_c.iter().zip(p_c.iter().zip(&p_h)).map(|(e, (a, b))| e * (a - b)).sum();
    let mut r = CycleResult::from_heats(q_h, q_c);
    r.level_crossing = crossing;
    Ok(r)
}

/// Efficiency of a non-adiabatic Otto cycle with adiabaticity factors
/// `Q* ≥ 1` on the compression (AB) and expansion (CD) strokes.
///
/// With `κ = ω₁/ω₂`: `η = 1 − κ (Q*_CD κ⟨H⟩_C − ⟨H⟩_A)/(κ⟨H⟩_C − Q*_AB⟨H⟩_A)`,
/// which collapses to `1 − κ` at `Q* = 1`. `⟨H⟩_A` and `⟨H⟩_C` are the
/// thermal energies at the start of the two unitary strokes.
pub fn nonadiabatic_otto_efficiency(
    omega1: f64,
    omega2: f64,
    e_a: f64,
    e_c: f64,
    q_ab: f64,
    q_cd: f64,
) -> Result<f64> {
    positive("ω₁", omega1)?;
    if !(omega2 > omega1) {
        return Err(Error::Domain(format!("need ω₂ > ω₁, got {omega2} ≤ {omega1}")));
    }
    if !(q_ab >= 1.0) || !(q_cd >= 1.0) {
        return Err(Error::Domain(format!("adiabaticity factors must be ≥ 1, got {q_ab}, {q_cd}")));
    }
    let k = omega1 / omega2;
    let den = k * e_c - q_ab * e_a;
    if !(den > 0.0) {
        return Err(Error::Regime(format!("heat input {den} ≤ 0: not an engine")));
    }
    Ok(1.0 - k * (q_cd * k * e_c - e_a) / den)
}

/// Kibble-Zurek defect-density exponent `νd/(νz + 1)`.
pub fn kz_exponent(nu: f64, z: f64, d: f64) -> Result<f64> {
    positive("ν", nu)?;
    positive("z", z)?;
    positive("d", d)?;
    Ok(nu * d / (nu * z + 1.0))
}

/// Efficiency of a hybrid machine exchanging work and heat with several
/// reservoirs.
///
/// Each heat flow `Q̇_i` (heat extracted from reservoir `i` at `T_i`, flowing
/// into the machine) is converted to its free-energy value
/// `x_i = Q̇_i(T_r/T_i − 1)` relative to the reference `T_r`; work flows
/// `Ẇ_α` are counted positive when delivered by the machine. Useful terms
/// are the positive parts:
/// `η = −(Σ Ẇ⁺ + Σ x⁺)/(Σ Ẇ⁻ + Σ x⁻)`.
///
/// The total free-energy rate `Σ Ẇ + Σ x` must be ≤ 0 (second law); a
/// reversible set gives 1 and a set with no useful term gives 0.
pub fn hybrid_efficiency(work_flows: &[f64], heat_flows: &[(f64, f64)], t_r: f64) -> Result<f64> {
    positive("reference temperature", t_r)?;
    let mut terms: Vec<f64> = work_flows.to_vec();
    for &(q, t) in heat_flows {
        positive("reservoir temperature", t)?;
        terms.push(q * (t_r / t - 1.0));
    }
    if terms.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite);
    }
    let useful: f64 = terms.iter().filter(|&&x| x > 0.0).sum();
    let wasted: f64 = terms.iter().filter(|&&x| x < 0.0).sum();
    let scale = terms.iter().map(|x| x.abs()).fold(0.0, f64::max);
    if scale == 0.0 {
        return Err(Error::Undefined("all flows vanish".into()));
    }
    if useful + wasted > 1e-12 * scale {
        return Err(Error::Domain(format!(
            "flow set produces free energy at rate {} > 0 (second-law violation)",
            useful + wasted
        )));
    }
    if wasted == 0.0 {
        return Err(Error::Undefined("no resource is consumed".into()));
    }
    Ok(-useful / wasted)
}
