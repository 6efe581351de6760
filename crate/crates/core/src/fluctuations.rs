//! Two-point-measurement statistics of stroke engines.
//!
//! Every stroke starts and ends with a projective energy measurement. A work
//! stroke moves level `n` of the initial spectrum to level `m` of the final
//! spectrum with probability `P_{n→m}`; a thermal stroke resets the medium to
//! a Gibbs state of fixed levels. Chaining strokes by the chain rule gives
//! the joint distribution of all stroke outcomes.
//!
//! All outcomes are energy changes of the medium: `W > 0` is work done on it,
//! `Q > 0` is heat it absorbs.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::hilbert::Operator;

/// Normalization tolerance for distributions and transition rows.
pub const NORM_TOL: f64 = 1e-12;

/// Largest joint distribution [`cycle_joint_distribution`] will enumerate.
pub const MAX_JOINT_ATOMS: usize = 1_000_000;

/// Finite distribution of real outcomes, sorted by value with coincident
/// values merged.
#[derive(Debug, Clone, PartialEq)]
pub struct OutcomeDistribution {
    atoms: Vec<(f64, f64)>,
}

impl OutcomeDistribution {
    /// Builds a distribution from `(value, probability)` pairs. Values closer
    /// than `1e-12·max(1, |v|max)` are merged at their weighted mean.
    pub fn new(atoms: Vec<(f64, f64)>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::InvalidState("empty distribution".into()));
        }
        let mut total = 0.0;
        for &(v, p) in &atoms {
            if !v.is_finite() || !p.is_finite() {
                return Err(Error::NonFinite);
            }
            if p < -NORM_TOL {
                return Err(Error::InvalidState(format!("negative probability {p}")));
            }
            total += p;
        }
        if (total - 1.0).abs() > NORM_TOL * atoms.len().max(1) as f64 {
            return Err(Error::InvalidState(format!("probabilities sum to {total}")));
        }
        Ok(Self::merged(atoms))
    }

    /// A single certain outcome.
    pub fn point(value: f64) -> Self {
        OutcomeDistribution { atoms: vec![(value, 1.0)] }
    }

    fn merged(mut atoms: Vec<(f64, f64)>) -> Self {
        atoms.retain(|&(_, p)| p > 0.0);
        atoms.sort_by(|a, b| a.0.total_cmp(&b.0));
        let scale = atoms.iter().fold(1.0f64, |m, a| m.max(a.0.abs()));
        let tol = NORM_TOL * scale;
        let mut out: Vec<(f64, f64)> = Vec::with_capacity(atoms.len());
        for (v, p) in atoms {
            match out.last_mut() {
                Some(last) if (v - last.0).abs() <= tol => {
                    let w = last.1 + p;
                    last.0 = (last.0 * last.1 + v * p) / w;
                    last.1 = w;
                }
                _ => out.push((v, p)),
            }
        }
        OutcomeDistribution { atoms: out }
    }

    pub fn atoms(&self) -> &[(f64, f64)] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn total_probability(&self) -> f64 {
        self.atoms.iter().map(|a| a.1).sum()
    }

    /// Raw moment `⟨x^k⟩`.
    pub fn moment(&self, k: i32) -> f64 {
        self.atoms.iter().map(|&(v, p)| p * v.powi(k)).sum()
    }

    pub fn mean(&self) -> f64 {
        self.moment(1)
    }

    pub fn variance(&self) -> f64 {
        let m = self.mean();
        self.atoms.iter().map(|&(v, p)| p * (v - m).powi(2)).sum()
    }

    /// Probability of the outcome closest to `value`, if within merge
    /// tolerance.
    pub fn probability_of(&self, value: f64) -> f64 {
        let tol = NORM_TOL * value.abs().max(1.0);
        self.atoms.iter().filter(|a| (a.0 - value).abs() <= tol).map(|a| a.1).sum()
    }
}

/// Whether a stroke exchanges work (changing levels) or heat (thermalizing
/// at fixed levels).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StrokeKind {
    Work,
    Heat,
}

/// One stroke of a TPM cycle: levels before and after, and the row-stochastic
/// transition matrix `P[n][m] = P_{n→m}`.
#[derive(Debug, Clone, PartialEq)]
pub struct StrokeProtocol {
    kind: StrokeKind,
    e_initial: Vec<f64>,
    e_final: Vec<f64>,
    transition: DMatrix<f64>,
}

fn check_levels(e: &[f64]) -> Result<()> {
    if e.is_empty() {
        return Err(Error::Domain("empty spectrum".into()));
    }
    if e.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite);
    }
    Ok(())
}

/// Gibbs weights of a spectrum; `β = +∞` gives the uniform ground manifold.
pub fn thermal_weights(e: &[f64], beta: f64) -> Result<Vec<f64>> {
    check_levels(e)?;
    if beta.is_nan() {
        return Err(Error::NonFinite);
    }
    let e_min = e.iter().cloned().fold(f64::INFINITY, f64::min);
    let e_max = e.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let w: Vec<f64> = if beta.is_infinite() {
        let target = if beta > 0.0 { e_min } else { e_max };
        let tol = 1e-12 * e_max.abs().max(e_min.abs()).max(1.0);
        e.iter().map(|&x| if (x - target).abs() <= tol { 1.0 } else { 0.0 }).collect()
    } else {
        let shift = if beta >= 0.0 { e_min } else { e_max };
        e.iter().map(|&x| (-beta * (x - shift)).exp()).collect()
    };
    let z: f64 = w.iter().sum();
    Ok(w.into_iter().map(|x| x / z).collect())
}

impl StrokeProtocol {
    /// Work stroke with an explicit row-stochastic transition matrix.
    pub fn work(e_initial: Vec<f64>, e_final: Vec<f64>, transition: DMatrix<f64>) -> Result<Self> {
        check_levels(&e_initial)?;
        check_levels(&e_final)?;
        if transition.nrows() != e_initial.len() || transition.ncols() != e_final.len() {
            return Err(Error::DimensionMismatch {
                expected: e_initial.len() * e_final.len(),
                got: transition.nrows() * transition.ncols(),
            });
        }
        for (n, row) in transition.row_iter().enumerate() {
            if row.iter().any(|&p| !(p >= -NORM_TOL) || !p.is_finite()) {
                return Err(Error::InvalidState(format!("row {n} has an invalid probability")));
            }
            let s: f64 = row.iter().sum();
            if (s - 1.0).abs() > NORM_TOL {
                return Err(Error::InvalidState(format!("row {n} sums to {s}")));
            }
        }
        Ok(StrokeProtocol { kind: StrokeKind::Work, e_initial, e_final, transition })
    }

    /// Adiabatic work stroke: level `n` goes to level `n`.
    pub fn adiabatic(e_initial: Vec<f64>, e_final: Vec<f64>) -> Result<Self> {
        let n = e_initial.len();
        if e_final.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: e_final.len() });
        }
        Self::work(e_initial, e_final, DMatrix::identity(n, n))
    }

    /// Work stroke generated by a unitary `U` between `H₀` and `H_τ`:
    /// `P_{n→m} = |⟨m_τ|U|n_0⟩|²` in the (ascending) eigenbases.
    pub fn from_unitary(h0: &Operator, h_tau: &Operator, u: &Operator) -> Result<Self> {
        let d = h0.dim();
        for op in [h_tau, u] {
            if op.dim() != d {
                return Err(Error::DimensionMismatch { expected: d, got: op.dim() });
            }
        }
        if !u.is_unitary(1e-10) {
            return Err(Error::NotUnitary(u.unitarity_error()));
        }
        let (e0, v0) = h0.eigh()?;
        let (e1, v1) = h_tau.eigh()?;
        let amp = v1.adjoint() * u.matrix() * &v0;
        let mut p = DMatrix::from_fn(d, d, |n, m| amp[(m, n)].norm_sqr());
        for mut row in p.row_iter_mut() {
            let s: f64 = row.iter().sum();
            row /= s;
        }
        Self::work(e0, e1, p)
    }

    /// Thermal stroke at fixed levels: every start level is reset to the
    /// Gibbs state at `β`.
    pub fn thermal(energies: Vec<f64>, beta: f64) -> Result<Self> {
        let w = thermal_weights(&energies, beta)?;
        let d = energies.len();
        let transition = DMatrix::from_fn(d, d, |_, m| w[m]);
        Ok(StrokeProtocol { kind: StrokeKind::Heat, e_initial: energies.clone(), e_final: energies, transition })
    }

    pub fn kind(&self) -> StrokeKind {
        self.kind
    }

    pub fn initial_levels(&self) -> &[f64] {
        &self.e_initial
    }

    pub fn final_levels(&self) -> &[f64] {
        &self.e_final
    }

    pub fn transition(&self) -> &DMatrix<f64> {
        &self.transition
    }

    /// True when columns also sum to one, so the uniform state is invariant.
    pub fn is_doubly_stochastic(&self) -> bool {
        self.transition.nrows() == self.transition.ncols()
            && self.transition.column_iter().all(|c| (c.sum() - 1.0).abs() <= NORM_TOL)
    }

    /// Outcomes `(end level, energy change, probability)` from one start
    /// level, including impossible ones so joints enumerate the full space.
    fn branches(&self, n: usize) -> impl Iterator<Item = (usize, f64, f64)> + '_ {
        let e0 = self.e_initial[n];
        (0..self.e_final.len())
            .map(move |m| (m, self.e_final[m] - e0, self.transition[(n, m)]))
    }
}

/// `P(W) = Σ_{n,m} δ[W − (E_m^τ − E_n^0)] P_{n→m} P_n^0(β)`.
pub fn tpm_work_distribution(stroke: &StrokeProtocol, beta: f64) -> Result<OutcomeDistribution> {
    let p0 = thermal_weights(stroke.initial_levels(), beta)?;
    let mut atoms = Vec::new();
    for (n, &pn) in p0.iter().enumerate() {
        if pn == 0.0 {
            continue;
        }
        atoms.extend(stroke.branches(n).map(|(_, w, p)| (w, p * pn)));
    }
    OutcomeDistribution::new(atoms)
}

/// Heat distribution of a stroke started in the measured level `start`:
/// `P(Q|m) = Σ_l δ[Q − (E_l − E_m)] P_{m→l}`.
pub fn conditional_heat_distribution(stroke: &StrokeProtocol, start: usize) -> Result<OutcomeDistribution> {
    let d = stroke.initial_levels().len();
    if start >= d {
        return Err(Error::DimensionMismatch { expected: d, got: start + 1 });
    }
    OutcomeDistribution::new(stroke.branches(start).map(|(_, q, p)| (q, p)).collect())
}

/// One trajectory of a chained TPM cycle: per-stroke energy changes.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub levels: Vec<usize>,
    pub values: Vec<f64>,
    pub probability: f64,
}

/// Joint distribution over all stroke outcomes of a chained cycle, kept as
/// unmerged trajectories.
#[derive(Debug, Clone, PartialEq)]
pub struct JointDistribution {
    kinds: Vec<StrokeKind>,
    trajectories: Vec<Trajectory>,
}

impl JointDistribution {
    pub fn kinds(&self) -> &[StrokeKind] {
        &self.kinds
    }

    pub fn trajectories(&self) -> &[Trajectory] {
        &self.trajectories
    }

    pub fn total_probability(&self) -> f64 {
        self.trajectories.iter().map(|t| t.probability).sum()
    }

    fn collect<F: Fn(&Trajectory) -> f64>(&self, f: F) -> Result<OutcomeDistribution> {
        OutcomeDistribution::new(self.trajectories.iter().map(|t| (f(t), t.probability)).collect())
    }

    /// Marginal of stroke `i`.
    pub fn marginal(&self, i: usize) -> Result<OutcomeDistribution> {
        if i >= self.kinds.len() {
            return Err(Error::DimensionMismatch { expected: self.kinds.len(), got: i + 1 });
        }
        self.collect(|t| t.values[i])
    }

    /// Distribution of the net work (sum over work strokes).
    pub fn total_work(&self) -> Result<OutcomeDistribution> {
        self.collect(|t| self.sum_of(t, StrokeKind::Work))
    }

    fn sum_of(&self, t: &Trajectory, kind: StrokeKind) -> f64 {
        t.values.iter().zip(&self.kinds).filter(|(_, k)| **k == kind).map(|(v, _)| v).sum()
    }

    /// Mean of stroke `i`.
    pub fn mean(&self, i: usize) -> f64 {
        self.trajectories.iter().map(|t| t.probability * t.values[i]).sum()
    }
}

/// Chains strokes starting from a Gibbs state at `beta` of the first
/// stroke's initial levels:
/// `P(x₁, x₂, …) = … P(x₂|x₁) P(x₁)`.
pub fn cycle_joint_distribution(beta: f64, strokes: &[StrokeProtocol]) -> Result<JointDistribution> {
    let first = strokes.first().ok_or_else(|| Error::Domain("no strokes".into()))?;
    let mut size = first.initial_levels().len();
    for (i, s) in strokes.iter().enumerate() {
        if i > 0 && s.initial_levels().len() != strokes[i - 1].final_levels().len() {
            return Err(Error::DimensionMismatch {
                expected: strokes[i - 1].final_levels().len(),
                got: s.initial_levels().len(),
            });
        }
        size = size.saturating_mul(s.final_levels().len());
        if size > MAX_JOINT_ATOMS {
            return Err(Error::TooLarge(size));
        }
    }
    let p0 = thermal_weights(first.initial_levels(), beta)?;
    let mut frontier: Vec<Trajectory> = p0
        .iter()
        .enumerate()
        .map(|(n, &p)| Trajectory { levels: vec![n], values: Vec::new(), probability: p })
        .collect();
    for s in strokes {
        let mut next = Vec::with_capacity(frontier.len() * s.final_levels().len());
        for t in &frontier {
            let start = *t.levels.last().expect("levels start non-empty");
            for (m, x, p) in s.branches(start) {
                let mut levels = t.levels.clone();
                levels.push(m);
                let mut values = t.values.clone();
                values.push(x);
                next.push(Trajectory { levels, values, probability: t.probability * p });
            }
        }
        frontier = next;
    }
    Ok(JointDistribution { kinds: strokes.iter().map(|s| s.kind).collect(), trajectories: frontier })
}

/// Efficiency distribution plus the probability mass of trajectories with
/// no heat input, which have no efficiency and are left out.
#[derive(Debug, Clone, PartialEq)]
pub struct EfficiencyDistribution {
    pub distribution: OutcomeDistribution,
    pub excluded_mass: f64,
}

/// `P(η)` with `η = −W_net / Q_in` per trajectory, where `W_net` sums the
/// work strokes and `Q_in` is stroke `q_in`. The remaining distribution is
/// renormalized over trajectories with `Q_in ≠ 0`.
pub fn efficiency_distribution(joint: &JointDistribution, q_in: usize) -> Result<EfficiencyDistribution> {
    if q_in >= joint.kinds.len() {
        return Err(Error::DimensionMismatch { expected: joint.kinds.len(), got: q_in + 1 });
    }
    let scale = joint
        .trajectories
        .iter()
        .flat_map(|t| t.values.iter())
        .fold(1.0f64, |m, v| m.max(v.abs()));
    let mut excluded = 0.0;
    let mut atoms = Vec::new();
    for t in &joint.trajectories {
        let q = t.values[q_in];
        if q.abs() <= NORM_TOL * scale {
            excluded += t.probability;
        } else {
            atoms.push((-joint.sum_of(t, StrokeKind::Work) / q, t.probability));
        }
    }
    let kept = 1.0 - excluded;
    if atoms.is_empty() || kept <= NORM_TOL {
        return Err(Error::Undefined("every trajectory has zero heat input".into()));
    }
    let total: f64 = atoms.iter().map(|a| a.1).sum();
    let atoms = atoms.into_iter().map(|(v, p)| (v, p / total)).collect();
    Ok(EfficiencyDistribution { distribution: OutcomeDistribution::new(atoms)?, excluded_mass: excluded })
}

/// Both sides of `Var(j)/⟨j⟩² ≥ 2/σ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TurCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub satisfied: bool,
    /// `lhs − rhs`; negative when violated.
    pub margin: f64,
}

pub fn tur_check(mean_current: f64, var_current: f64, entropy_production: f64) -> Result<TurCheck> {
    if !(entropy_production > 0.0) {
        return Err(Error::Domain(format!("entropy production must be positive, got {entropy_production}")));
    }
    if mean_current == 0.0 || !mean_current.is_finite() {
        return Err(Error::Domain("mean current must be finite and non-zero".into()));
    }
    if !(var_current >= 0.0) {
        return Err(Error::Domain(format!("variance must be ≥ 0, got {var_current}")));
    }
    let lhs = var_current / (mean_current * mean_current);
    let rhs = 2.0 / entropy_production;
    let margin = lhs - rhs;
    Ok(TurCheck { lhs, rhs, satisfied: margin >= -NORM_TOL * rhs, margin })
}

/// Mean, variance and entropy production per unit time of a biased hopping
/// process with forward rate `p` and backward rate `q`:
/// `(p − q, p + q, (p − q) ln(p/q))`.
pub fn biased_hopping_statistics(p: f64, q: f64) -> Result<(f64, f64, f64)> {
    if !(p > 0.0 && q > 0.0) || !p.is_finite() || !q.is_finite() {
        return Err(Error::Domain("hopping rates must be positive".into()));
    }
    Ok((p - q, p + q, (p - q) * (p / q).ln()))
}

/// Outcome of the linear-response check `η² ≤ Var(W)/Var(Q_in) ≤ η_C²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eta2Check {
    pub eta_sq: f64,
    pub eta2_ratio: f64,
    pub eta_c_sq: f64,
    pub within_bounds: bool,
    /// Set when the supplied dimensionless gradient exceeds 0.1.
    pub regime_warning: bool,
}

/// Evaluates the second-moment efficiency bounds on a cycle joint. `gradient`
/// is the caller's dimensionless driving (e.g. `ΔT/T`), used only for the
/// regime flag.
pub fn eta2_bound_check(joint: &JointDistribution, q_in: usize, eta_c: f64, gradient: f64) -> Result<Eta2Check> {
    if !(eta_c > 0.0) || gradient == 0.0 {
        return Err(Error::Regime("no thermodynamic gradient: the bounds are degenerate".into()));
    }
    let w = joint.total_work()?;
    let q = joint.marginal(q_in)?;
    let var_q = q.variance();
    if !(var_q > 0.0) {
        return Err(Error::Undefined("heat input has zero variance".into()));
    }
    let eta = -w.mean() / q.mean();
    let eta_sq = eta * eta;
    let ratio = w.variance() / var_q;
    let eta_c_sq = eta_c * eta_c;
    let slack = 1e-10 * eta_c_sq;
    Ok(Eta2Check {
        eta_sq,
        eta2_ratio: ratio,
        eta_c_sq,
        within_bounds: eta_sq <= ratio + slack && ratio <= eta_c_sq + slack,
        regime_warning: gradient.abs() > 0.1,
    })
}
