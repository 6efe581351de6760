//! Autonomous machines built on Lindblad dynamics: the three-level maser
//! engine and the three-qubit absorption refrigerator.
//!
//! The maser's work reservoir is an infinite-temperature bath (equal upward
//! and downward rates), so it carries energy but no entropy.
//!
//! The refrigerator uses local dissipators: each qubit couples to its own
//! bath through its bare `σ⁻` with detailed balance at the bare gap. This is
//! the weak-coupling reading (`γ ≪ g ≪ ω_c`); the global master equation is
//! not shipped.

use crate::error::{Error, Result};
use crate::hilbert::{embed, qubit, tensor_all, HilbertFactorization, Operator};
use crate::lindblad::{heat_currents, steady_state, LiouvillianModel, ThermalDissipator};

/// Three-level maser with levels `ω₁ < ω₂ < ω₃`, hot transition `1 ↔ 3`,
/// cold transition `2 ↔ 3` and work transition `1 ↔ 2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaserSpec {
    pub omega1: f64,
    pub omega2: f64,
    pub omega3: f64,
    pub gamma_h: f64,
    pub gamma_c: f64,
    pub gamma_w: f64,
    pub t_h: f64,
    pub t_c: f64,
}

impl MaserSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.omega3 > self.omega2 && self.omega2 > self.omega1) {
            return Err(Error::Domain("maser levels must satisfy ω₃ > ω₂ > ω₁".into()));
        }
        for (name, g) in [("γ_h", self.gamma_h), ("γ_c", self.gamma_c), ("γ_w", self.gamma_w)] {
            if !(g >= 0.0) || !g.is_finite() {
                return Err(Error::Domain(format!("{name} must be finite and ≥ 0, got {g}")));
            }
        }
        if !(self.t_h > 0.0) || !(self.t_c > 0.0) {
            return Err(Error::Domain("maser temperatures must be positive".into()));
        }
        Ok(())
    }

    /// `ω_h = ω₃ − ω₁`.
    pub fn omega_h(&self) -> f64 {
        self.omega3 - self.omega1
    }

    /// `ω_c = ω₃ − ω₂`.
    pub fn omega_c(&self) -> f64 {
        self.omega3 - self.omega2
    }

    /// Frequency of the work transition, `ω_h − ω_c`.
    pub fn omega_w(&self) -> f64 {
        self.omega2 - self.omega1
    }
}

/// Steady energy currents into the medium: hot bath, cold bath and power
/// (`P < 0` is power delivered to the work reservoir).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaserCurrents {
    pub j_h: f64,
    pub j_c: f64,
    pub power: f64,
}

/// Closed-form steady populations `(p₁, p₂, p₃)` of the population equations,
/// from the spanning-tree (Kirchhoff) weights of the three-state graph.
pub fn maser_populations(spec: &MaserSpec) -> Result<[f64; 3]> {
    spec.validate()?;
    let a = (-spec.omega_h() / spec.t_h).exp();
    let b = (-spec.omega_c() / spec.t_c).exp();
    let (gh, gc, gw) = (spec.gamma_h, spec.gamma_c, spec.gamma_w);
    let w1 = gw * gh + b * gc * gh + gc * gw;
    let w2 = gw * gc + a * gh * gc + gh * gw;
    let w3 = a * b * gh * gc + b * gw * gc + a * gw * gh;
    let z = w1 + w2 + w3;
    if !(z > 0.0) {
        return Err(Error::Domain("maser has no dynamics: rate graph is disconnected".into()));
    }
    Ok([w1 / z, w2 / z, w3 / z])
}

/// Open-system model of the maser on `H = Σ ω_i|i⟩⟨i|`, with channels in the
/// order hot, cold, work.
pub fn maser_model(spec: &MaserSpec) -> Result<LiouvillianModel> {
    spec.validate()?;
    let h = Operator::diagonal(&[spec.omega1, spec.omega2, spec.omega3]);
    let dh = ThermalDissipator::new(Operator::ket_bra(0, 2, 3), spec.gamma_h, 1.0 / spec.t_h, spec.omega_h())?;
    let dc = ThermalDissipator::new(Operator::ket_bra(1, 2, 3), spec.gamma_c, 1.0 / spec.t_c, spec.omega_c())?;
    let dw = ThermalDissipator::infinite_temperature(Operator::ket_bra(0, 1, 3), spec.gamma_w, spec.omega_w())?;
    LiouvillianModel::new(h, vec![dh, dc, dw])
}

fn currents_from_populations(spec: &MaserSpec, p: &[f64; 3]) -> MaserCurrents {
    let a = (-spec.omega_h() / spec.t_h).exp();
    let b = (-spec.omega_c() / spec.t_c).exp();
    MaserCurrents {
        j_h: spec.omega_h() * spec.gamma_h * (a * p[0] - p[2]),
        j_c: spec.omega_c() * spec.gamma_c * (b * p[1] - p[2]),
        power: (spec.omega_c() - spec.omega_h()) * spec.gamma_w * (p[1] - p[0]),
    }
}

/// Currents from the Liouvillian null space and `J_x = tr[ρ D_x†(H)]`.
pub fn maser_currents_liouvillian(spec: &MaserSpec) -> Result<MaserCurrents> {
    let m = maser_model(spec)?;
    let rho = steady_state(&m)?;
    let j = heat_currents(&m, &rho)?;
    Ok(MaserCurrents { j_h: j[0], j_c: j[1], power: j[2] })
}

/// Closed-form steady currents, checked against the Liouvillian route.
pub fn maser_steady_currents(spec: &MaserSpec) -> Result<MaserCurrents> {
    let p = maser_populations(spec)?;
    let closed = currents_from_populations(spec, &p);
    let numeric = maser_currents_liouvillian(spec)?;
    let scale = spec.omega_h() * spec.gamma_h.max(spec.gamma_c).max(spec.gamma_w);
    let diff = (closed.j_h - numeric.j_h)
        .abs()
        .max((closed.j_c - numeric.j_c).abs())
        .max((closed.power - numeric.power).abs());
    if diff > 1e-9 * scale.max(1.0) {
        return Err(Error::Accuracy {
            what: "closed-form and Liouvillian maser currents disagree".into(),
            estimate: closed.j_h,
            error: diff,
        });
    }
    Ok(closed)
}

/// Engine efficiency `−P/J_h`, which equals `1 − ω_c/ω_h` for any rates.
///
/// The engine regime is the population inversion `p₂ > p₁`, i.e.
/// `ω_c/ω_h > T_c/T_h`, equivalently `1 − ω_c/ω_h < η_C`.
pub fn maser_efficiency(spec: &MaserSpec) -> Result<f64> {
    spec.validate()?;
    if !(spec.omega_c() / spec.omega_h() > spec.t_c / spec.t_h) {
        return Err(Error::Regime(format!(
            "not an engine: ω_c/ω_h = {} ≤ T_c/T_h = {}",
            spec.omega_c() / spec.omega_h(),
            spec.t_c / spec.t_h
        )));
    }
    let c = currents_from_populations(spec, &maser_populations(spec)?);
    if !(c.j_h > 0.0) {
        return Err(Error::Regime("no heat drawn from the hot bath".into()));
    }
    Ok(-c.power / c.j_h)
}

/// Three-qubit absorption refrigerator `(c, h, w)` with
/// `H = Σ ω_i σ⁺_i σ⁻_i + g(σ⁻_c σ⁺_h σ⁻_w + h.c.)` and `ω_w = ω_h − ω_c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QarSpec {
    pub omega_h: f64,
    pub omega_c: f64,
    pub g: f64,
    pub t_h: f64,
    pub t_c: f64,
    pub t_w: f64,
    pub gamma_h: f64,
    pub gamma_c: f64,
    pub gamma_w: f64,
}

/// Index of each qubit in the tensor ordering.
pub const QAR_COLD: usize = 0;
pub const QAR_HOT: usize = 1;
pub const QAR_WORK: usize = 2;

impl QarSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.omega_h > self.omega_c && self.omega_c > 0.0) {
            return Err(Error::Domain("refrigerator needs ω_h > ω_c > 0".into()));
        }
        if !(self.g >= 0.0) || !self.g.is_finite() {
            return Err(Error::Domain(format!("coupling must be finite and ≥ 0, got {}", self.g)));
        }
        for t in [self.t_h, self.t_c, self.t_w] {
            if !(t > 0.0) {
                return Err(Error::Domain("refrigerator temperatures must be positive".into()));
            }
        }
        for g in [self.gamma_h, self.gamma_c, self.gamma_w] {
            if !(g >= 0.0) || !g.is_finite() {
                return Err(Error::Domain("dissipation rates must be finite and ≥ 0".into()));
            }
        }
        Ok(())
    }

    /// Work-qubit gap, fixed by resonance.
    pub fn omega_w(&self) -> f64 {
        self.omega_h - self.omega_c
    }

    /// Present when the weak-coupling hierarchy `γ ≪ g ≪ ω_c` is not met by
    /// at least a factor of ten at each step.
    pub fn weak_coupling_warning(&self) -> Option<String> {
        let gamma = self.gamma_h.max(self.gamma_c).max(self.gamma_w);
        let mut issues = Vec::new();
        if self.g > 0.0 && gamma > 0.1 * self.g {
            issues.push(format!("γ = {gamma} is not ≪ g = {}", self.g));
        }
        if self.g > 0.1 * self.omega_c.min(self.omega_w()) {
            issues.push(format!("g = {} is not ≪ min(ω_c, ω_w)", self.g));
        }
        (!issues.is_empty()).then(|| issues.join("; "))
    }
}

/// `β_v = (β_h ω_h − β_w ω_w)/ω_c`.
pub fn qar_virtual_temperature(spec: &QarSpec) -> Result<f64> {
    spec.validate()?;
    Ok((spec.omega_h / spec.t_h - spec.omega_w() / spec.t_w) / spec.omega_c)
}

/// Virtual-qubit cooling criterion `T_c > 1/β_v`, written as `β_c < β_v` so
/// that non-positive `β_v` correctly predicts no cooling.
pub fn qar_cooling_predicted(spec: &QarSpec) -> Result<bool> {
    Ok(1.0 / spec.t_c < qar_virtual_temperature(spec)?)
}

/// 8-dimensional three-qubit model; channels ordered cold, hot, work.
pub fn qar_model(spec: &QarSpec) -> Result<LiouvillianModel> {
    spec.validate()?;
    let fact = HilbertFactorization::new(vec![2, 2, 2])?;
    let n = qubit::excitation();
    let h0 = embed(&n, QAR_COLD, &fact)?.scale(spec.omega_c)
        + embed(&n, QAR_HOT, &fact)?.scale(spec.omega_h)
        + embed(&n, QAR_WORK, &fact)?.scale(spec.omega_w());
    let coupling = tensor_all(&[qubit::sigma_minus(), qubit::sigma_plus(), qubit::sigma_minus()])?;
    let h = &h0 + &(&coupling + &coupling.adjoint()).scale(spec.g);
    let local = |site: usize, gamma: f64, t: f64, omega: f64| {
        ThermalDissipator::new(embed(&qubit::sigma_minus(), site, &fact)?, gamma, 1.0 / t, omega)
    };
    let dissipators = vec![
        local(QAR_COLD, spec.gamma_c, spec.t_c, spec.omega_c)?,
        local(QAR_HOT, spec.gamma_h, spec.t_h, spec.omega_h)?,
        local(QAR_WORK, spec.gamma_w, spec.t_w, spec.omega_w())?,
    ];
    LiouvillianModel::new(h, dissipators)
}

/// Steady-state energetics of the refrigerator.
#[derive(Debug, Clone, PartialEq)]
pub struct QarCooling {
    pub j_c: f64,
    pub j_h: f64,
    pub j_w: f64,
    /// `J_c > 0`: heat drawn from the cold bath.
    pub cooling: bool,
    pub warning: Option<String>,
}

pub fn qar_steady_cooling(spec: &QarSpec) -> Result<QarCooling> {
    let m = qar_model(spec)?;
    let rho = steady_state(&m)?;
    let j = heat_currents(&m, &rho)?;
    Ok(QarCooling {
        j_c: j[0],
        j_h: j[1],
        j_w: j[2],
        cooling: j[0] > 0.0,
        warning: spec.weak_coupling_warning(),
    })
}
