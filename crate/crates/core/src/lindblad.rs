//! LGKS generators for weakly coupled open systems: dissipators and their
//! adjoints, fixed-step propagation, steady states, heat currents and
//! entropy production.
//!
//! A thermal dissipator with jump operator `A`, rate `γ`, inverse
//! temperature `β` and transition frequency `ω` acts as
//!
//! `D(ρ) = γ(AρA† − ½{A†A, ρ}) + γe^{−βω}(A†ρA − ½{AA†, ρ})`.
//!
//! An infinite-temperature (work) bath is the `β = 0` case: equal upward and
//! downward rates.
//!
//! Superoperators are vectorized by column stacking, `vec(AρB) = (Bᵀ ⊗ A) vec(ρ)`.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::hilbert::{
    partial_trace, relative_entropy, tensor_product, von_neumann_entropy, DensityMatrix,
    HilbertFactorization, Operator, C64,
};
use crate::numerics::unique_null_vector;

/// Maximum trace drift tolerated by [`propagate`] before renormalization.
pub const MAX_TRACE_DRIFT: f64 = 1e-6;

/// Thermal jump channel `(A, γ, β, ω)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ThermalDissipator {
    a: Operator,
    gamma: f64,
    beta: f64,
    omega: f64,
    ada: Operator,
    aad: Operator,
}

impl ThermalDissipator {
    pub fn new(a: Operator, gamma: f64, beta: f64, omega: f64) -> Result<Self> {
        if !(gamma >= 0.0) || !gamma.is_finite() {
            return Err(Error::Domain(format!("dissipation rate must be finite and ≥ 0, got {gamma}")));
        }
        if !(omega > 0.0) || !omega.is_finite() {
            return Err(Error::Domain(format!("transition frequency must be positive, got {omega}")));
        }
        if !beta.is_finite() {
            return Err(Error::Domain(format!("inverse temperature must be finite, got {beta}")));
        }
        let ad = a.adjoint();
        let ada = &ad * &a;
        let aad = &a * &ad;
        Ok(ThermalDissipator { a, gamma, beta, omega, ada, aad })
    }

    /// Infinite-temperature channel (`β = 0`), as used for a work reservoir.
    pub fn infinite_temperature(a: Operator, gamma: f64, omega: f64) -> Result<Self> {
        Self::new(a, gamma, 0.0, omega)
    }

    pub fn jump(&self) -> &Operator {
        &self.a
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    /// Rate of the excitation process, `γ e^{−βω}`.
    pub fn up_rate(&self) -> f64 {
        self.gamma * (-self.beta * self.omega).exp()
    }

    fn apply_raw(&self, rho: &Operator) -> Operator {
        let ad = self.a.adjoint();
        let down = &(&(&self.a * rho) * &ad) - &self.ada.anticommutator(rho).scale(0.5);
        let up = &(&(&ad * rho) * &self.a) - &self.aad.anticommutator(rho).scale(0.5);
        down.scale(self.gamma) + up.scale(self.up_rate())
    }

    fn adjoint_raw(&self, obs: &Operator) -> Operator {
        let ad = self.a.adjoint();
        let down = &(&(&ad * obs) * &self.a) - &self.ada.anticommutator(obs).scale(0.5);
        let up = &(&(&self.a * obs) * &ad) - &self.aad.anticommutator(obs).scale(0.5);
        down.scale(self.gamma) + up.scale(self.up_rate())
    }

    fn superoperator(&self) -> DMatrix<C64> {
        let n = self.dim();
        let id = DMatrix::<C64>::identity(n, n);
        let a = self.a.matrix();
        let ad = a.adjoint();
        let half = C64::new(0.5, 0.0);
        let block = |jump: &DMatrix<C64>, prod: &DMatrix<C64>| {
            // J ρ J† − ½ P ρ − ½ ρ P with P = J†J
            jump.conjugate().kronecker(jump) - id.kronecker(prod) * half - prod.transpose().kronecker(&id) * half
        };
        let down = block(a, self.ada.matrix());
        let up = block(&ad, self.aad.matrix());
        down * C64::new(self.gamma, 0.0) + up * C64::new(self.up_rate(), 0.0)
    }
}

fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::DimensionMismatch { expected, got });
    }
    Ok(())
}

/// `D(ρ)` for a single channel.
pub fn apply_dissipator(d: &ThermalDissipator, rho: &DensityMatrix) -> Result<Operator> {
    check_dim(d.dim(), rho.dim())?;
    Ok(d.apply_raw(rho.as_operator()))
}

/// Heisenberg-picture dissipator `D†(O)`.
pub fn adjoint_dissipator(d: &ThermalDissipator, obs: &Operator) -> Result<Operator> {
    check_dim(d.dim(), obs.dim())?;
    Ok(d.adjoint_raw(obs))
}

/// Hamiltonian plus thermal channels, `dρ/dt = −i[H, ρ] + Σ_x D_x(ρ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LiouvillianModel {
    h: Operator,
    dissipators: Vec<ThermalDissipator>,
}

impl LiouvillianModel {
    pub fn new(h: Operator, dissipators: Vec<ThermalDissipator>) -> Result<Self> {
        let e = h.hermiticity_error();
        if e > crate::hilbert::HERMITIAN_TOL * h.max_abs().max(1.0) {
            return Err(Error::NotHermitian(e));
        }
        for d in &dissipators {
            check_dim(h.dim(), d.dim())?;
        }
        Ok(LiouvillianModel { h: h.hermitian_part(), dissipators })
    }

    pub fn hamiltonian(&self) -> &Operator {
        &self.h
    }

    pub fn dissipators(&self) -> &[ThermalDissipator] {
        &self.dissipators
    }

    pub fn dim(&self) -> usize {
        self.h.dim()
    }

    /// Generator applied to an arbitrary operator.
    pub fn apply(&self, rho: &Operator) -> Operator {
        let mut out = self.h.commutator(rho).scale_c(C64::new(0.0, -1.0));
        for d in &self.dissipators {
            out = out + d.apply_raw(rho);
        }
        out
    }

    /// Column-stacked `n² × n²` matrix of the generator.
    pub fn superoperator(&self) -> DMatrix<C64> {
        let n = self.dim();
        let id = DMatrix::<C64>::identity(n, n);
        let h = self.h.matrix();
        let mut l = (id.kronecker(h) - h.transpose().kronecker(&id)) * C64::new(0.0, -1.0);
        for d in &self.dissipators {
            l += d.superoperator();
        }
        l
    }
}

/// Result of [`propagate`]: the final state and the trace drift removed by
/// the final renormalization.
#[derive(Debug, Clone, PartialEq)]
pub struct Propagation {
    pub state: DensityMatrix,
    pub trace_drift: f64,
}

/// Fixed-step RK4 integration over duration `t` with step at most `dt`.
///
/// The step is shrunk so that an integer number of steps covers `t`. The
/// state is hermitized and trace-normalized once at the end.
pub fn propagate(m: &LiouvillianModel, rho0: &DensityMatrix, t: f64, dt: f64) -> Result<Propagation> {
    check_dim(m.dim(), rho0.dim())?;
    if !(dt > 0.0) || !(t >= 0.0) || !t.is_finite() {
        return Err(Error::Domain(format!("propagate needs t ≥ 0 and dt > 0, got t={t}, dt={dt}")));
    }
    if t == 0.0 {
        return Ok(Propagation { state: rho0.clone(), trace_drift: 0.0 });
    }
    let steps = (t / dt).ceil().max(1.0) as usize;
    let h = t / steps as f64;
    let mut rho = rho0.as_operator().clone();
    for _ in 0..steps {
        let k1 = m.apply(&rho);
        let k2 = m.apply(&(&rho + &k1.scale(0.5 * h)));
        let k3 = m.apply(&(&rho + &k2.scale(0.5 * h)));
        let k4 = m.apply(&(&rho + &k3.scale(h)));
        let incr = (k1 + k2.scale(2.0) + k3.scale(2.0) + k4).scale(h / 6.0);
        rho = rho + incr;
    }
    let tr = rho.trace();
    let drift = (tr - C64::new(1.0, 0.0)).norm();
    if !(drift <= MAX_TRACE_DRIFT) {
        return Err(Error::Accuracy {
            what: "trace drift during propagation".into(),
            estimate: tr.re,
            error: drift,
        });
    }
    let state = DensityMatrix::from_operator_normalized(rho)?;
    Ok(Propagation { state, trace_drift: drift })
}

/// Unique stationary state, from the null vector of the vectorized generator.
pub fn steady_state(m: &LiouvillianModel) -> Result<DensityMatrix> {
    let n = m.dim();
    let l = m.superoperator();
    let v = unique_null_vector(&l, 1e-10)?;
    let mut mat = DMatrix::from_column_slice(n, n, v.as_slice());
    let tr = mat.trace();
    if tr.norm() < 1e-14 {
        return Err(Error::AmbiguousSteadyState(0));
    }
    mat /= tr;
    let op = Operator::new(mat)?.hermitian_part();
    let residual = m.apply(&op).max_abs();
    let scale = l.iter().map(|z| z.norm()).fold(1.0, f64::max);
    if residual > 1e-10 * scale {
        return Err(Error::Accuracy {
            what: "steady-state residual".into(),
            estimate: residual,
            error: residual,
        });
    }
    DensityMatrix::from_operator_normalized(op)
}

/// Energy current `J_x = tr[ρ D_x†(H)]` into the system from channel `d`.
pub fn heat_current(m: &LiouvillianModel, d: &ThermalDissipator, rho: &DensityMatrix) -> Result<f64> {
    check_dim(m.dim(), rho.dim())?;
    check_dim(m.dim(), d.dim())?;
    let dh = d.adjoint_raw(&m.h);
    Ok((rho.as_operator().matrix() * dh.matrix()).trace().re)
}

/// Currents of every channel of the model, in declaration order.
pub fn heat_currents(m: &LiouvillianModel, rho: &DensityMatrix) -> Result<Vec<f64>> {
    m.dissipators.iter().map(|d| heat_current(m, d, rho)).collect()
}

/// Spohn entropy production rate `dS/dt − Σ_x β_x J_x`.
///
/// `dS/dt = −tr[L(ρ) ln ρ]` is evaluated in the eigenbasis of ρ. At a steady
/// state it vanishes and the result reduces to `−Σ_x β_x J_x`. When
/// probability flows into a zero eigenvalue the rate is `+∞`.
pub fn spohn_entropy_production(m: &LiouvillianModel, rho: &DensityMatrix) -> Result<f64> {
    check_dim(m.dim(), rho.dim())?;
    let (vals, vecs) = rho.as_operator().eigh()?;
    let lrho = m.apply(rho.as_operator());
    let rotated = vecs.adjoint() * lrho.matrix() * &vecs;
    let mut ds = 0.0;
    for (k, &lam) in vals.iter().enumerate() {
        let flow = rotated[(k, k)].re;
        if lam <= 1e-14 {
            if flow > 1e-14 {
                return Ok(f64::INFINITY);
            }
            continue;
        }
        ds -= flow * lam.ln();
    }
    let mut flux = 0.0;
    for d in &m.dissipators {
        flux += d.beta * heat_current(m, d, rho)?;
    }
    Ok(ds - flux)
}

/// Entropy production of a global unitary on an uncorrelated product.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GlobalEntropyProduction {
    /// `Σ = ΔS_S + Φ`.
    pub sigma: f64,
    /// `Φ = ΔS_E + S(ρ_E(t)‖ρ_E)`.
    pub phi: f64,
}

/// `Σ` and `Φ` for `ρ_SE(t) = U(ρ_S ⊗ ρ_E)U†`.
pub fn global_entropy_production(
    u: &Operator,
    rho_s: &DensityMatrix,
    rho_e: &DensityMatrix,
) -> Result<GlobalEntropyProduction> {
    check_dim(rho_s.dim() * rho_e.dim(), u.dim())?;
    let err = u.unitarity_error();
    if err > 1e-10 {
        return Err(Error::NotUnitary(err));
    }
    let fact = HilbertFactorization::bipartite(rho_s.dim(), rho_e.dim())?;
    let joint = DensityMatrix::from_operator_normalized(tensor_product(
        rho_s.as_operator(),
        rho_e.as_operator(),
    ))?;
    let evolved = joint.conjugate_by(u)?;
    let s_t = partial_trace(&evolved, &fact, &[0])?;
    let e_t = partial_trace(&evolved, &fact, &[1])?;
    let d_s = von_neumann_entropy(&s_t) - von_neumann_entropy(rho_s);
    let d_e = von_neumann_entropy(&e_t) - von_neumann_entropy(rho_e);
    let rel = relative_entropy(&e_t, rho_e)?;
    let phi = d_e + rel.value;
    Ok(GlobalEntropyProduction { sigma: d_s + phi, phi })
}
