//! Information-thermodynamic bounds: Szilárd and Landauer, erasure with a
//! quantum memory, the Sagawa-Ueda second law, a steering bound on locally
//! extractable work and the energetics of a measurement-fuelled engine.

use std::f64::consts::LN_2;
use std::fmt;

use crate::error::{Error, Result};
use crate::hilbert::{partial_trace, von_neumann_entropy, DensityMatrix, HilbertFactorization};

/// Information in natural units.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct Nats(pub f64);

/// Information in bits.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct Bits(pub f64);

impl From<Bits> for Nats {
    fn from(b: Bits) -> Self {
        Nats(b.0 * LN_2)
    }
}

impl From<Nats> for Bits {
    fn from(n: Nats) -> Self {
        Bits(n.0 / LN_2)
    }
}

impl fmt::Display for Nats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} nat", self.0)
    }
}

impl fmt::Display for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} bit", self.0)
    }
}

/// Unit selector for reporting, e.g. in CSV output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InfoUnits {
    #[default]
    Nats,
    Bits,
}

impl InfoUnits {
    pub fn express(self, n: Nats) -> f64 {
        match self {
            InfoUnits::Nats => n.0,
            InfoUnits::Bits => Bits::from(n).0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            InfoUnits::Nats => "nats",
            InfoUnits::Bits => "bits",
        }
    }
}

fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::Domain(format!("probability must lie in [0, 1], got {p}")))
    }
}

fn check_temperature(t: f64) -> Result<()> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("temperature must be positive and finite, got {t}")))
    }
}

/// `H(p) = −p log₂ p − (1−p) log₂(1−p)`.
pub fn binary_entropy(p: f64) -> Result<Bits> {
    check_probability(p)?;
    let term = |x: f64| if x > 0.0 { -x * x.log2() } else { 0.0 };
    Ok(Bits(term(p) + term(1.0 - p)))
}

/// Work from one bit at temperature `T`: `T ln 2`.
pub fn szilard_work(t: f64) -> Result<f64> {
    check_temperature(t)?;
    Ok(t * LN_2)
}

/// Minimal cost of erasing a binary memory with occupation `p`.
pub fn erasure_work(p: f64, t: f64) -> Result<f64> {
    Ok(szilard_work(t)? * binary_entropy(p)?.0)
}

/// `H(S|Q) = S(ρ_SQ) − S(ρ_Q)` for a bipartite state with `S` the first
/// factor and the memory `Q` the second.
pub fn conditional_entropy(rho_sq: &DensityMatrix, fact: &HilbertFactorization) -> Result<Bits> {
    if fact.dims().len() != 2 {
        return Err(Error::InvalidFactorization { dims: fact.dims().to_vec(), dim: rho_sq.dim() });
    }
    fact.check(rho_sq.dim())?;
    let rho_q = partial_trace(rho_sq, fact, &[1])?;
    Ok(Nats(von_neumann_entropy(rho_sq) - von_neumann_entropy(&rho_q)).into())
}

/// `W_eras(S|Q) = H(S|Q) T ln 2`; negative values mean erasure releases work.
pub fn conditional_erasure_work(rho_sq: &DensityMatrix, fact: &HilbertFactorization, t: f64) -> Result<f64> {
    let h = conditional_entropy(rho_sq, fact)?;
    Ok(szilard_work(t)? * h.0)
}

/// Feedback record: outcome probabilities `p(m)` and, for each outcome, the
/// probabilities `p(k|m)` of applying protocol `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementRecord {
    p_m: Vec<f64>,
    p_k_given_m: Vec<Vec<f64>>,
}

const RECORD_TOL: f64 = 1e-12;

fn check_distribution(p: &[f64], what: &str) -> Result<()> {
    if p.iter().any(|&x| !(0.0..=1.0).contains(&x)) {
        return Err(Error::Domain(format!("{what} has entries outside [0, 1]")));
    }
    let s: f64 = p.iter().sum();
    if (s - 1.0).abs() > RECORD_TOL {
        return Err(Error::Domain(format!("{what} sums to {s}, not 1")));
    }
    Ok(())
}

impl MeasurementRecord {
    pub fn new(p_m: Vec<f64>, p_k_given_m: Vec<Vec<f64>>) -> Result<Self> {
        if p_m.is_empty() {
            return Err(Error::Domain("record needs at least one outcome".into()));
        }
        if p_k_given_m.len() != p_m.len() {
            return Err(Error::DimensionMismatch { expected: p_m.len(), got: p_k_given_m.len() });
        }
        check_distribution(&p_m, "p(m)")?;
        let nk = p_k_given_m[0].len();
        for (m, row) in p_k_given_m.iter().enumerate() {
            if row.len() != nk {
                return Err(Error::DimensionMismatch { expected: nk, got: row.len() });
            }
            check_distribution(row, &format!("p(k|m={m})"))?;
        }
        Ok(MeasurementRecord { p_m, p_k_given_m })
    }

    /// Error-free feedback: protocol `k = m` always.
    pub fn perfect(p_m: Vec<f64>) -> Result<Self> {
        let n = p_m.len();
        let rows = (0..n).map(|m| (0..n).map(|k| if k == m { 1.0 } else { 0.0 }).collect()).collect();
        MeasurementRecord::new(p_m, rows)
    }

    pub fn outcomes(&self) -> usize {
        self.p_m.len()
    }

    pub fn protocols(&self) -> usize {
        self.p_k_given_m[0].len()
    }

    pub fn p_m(&self) -> &[f64] {
        &self.p_m
    }

    pub fn p_k_given_m(&self, k: usize, m: usize) -> f64 {
        self.p_k_given_m[m][k]
    }

    pub fn joint(&self, k: usize, m: usize) -> f64 {
        self.p_m[m] * self.p_k_given_m[m][k]
    }

    /// Marginal `p(k) = Σ_m p(m) p(k|m)`.
    pub fn p_k(&self, k: usize) -> f64 {
        (0..self.outcomes()).map(|m| self.joint(k, m)).sum()
    }

    /// `I^{(k,m)} = ln p(k|m)/p(k)`; `None` for pairs that never occur.
    pub fn pointwise_information(&self, k: usize, m: usize) -> Option<Nats> {
        let j = self.joint(k, m);
        (j > 0.0).then(|| Nats((self.p_k_given_m[m][k] / self.p_k(k)).ln()))
    }

    /// `⟨I⟩ = Σ p(k, m) I^{(k,m)}`, the mutual information between outcome
    /// and applied protocol.
    pub fn mean_information(&self) -> Nats {
        let mut total = 0.0;
        for m in 0..self.outcomes() {
            for k in 0..self.protocols() {
                if let Some(i) = self.pointwise_information(k, m) {
                    total += self.joint(k, m) * i.0;
                }
            }
        }
        Nats(total.max(0.0))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SagawaUedaCheck {
    /// `⟨W⟩ − ⟨ΔF⟩ + T⟨I⟩`.
    pub slack: f64,
    pub satisfied: bool,
}

/// Second law with feedback, `⟨W⟩ − ⟨ΔF⟩ ≥ −T⟨I⟩`.
pub fn sagawa_ueda_gap(w_mean: f64, df_mean: f64, i_mean: Nats, t: f64) -> Result<SagawaUedaCheck> {
    check_temperature(t)?;
    if !(i_mean.0 >= 0.0) {
        return Err(Error::Domain(format!("mean information must be ≥ 0, got {}", i_mean.0)));
    }
    let slack = w_mean - df_mean + t * i_mean.0;
    Ok(SagawaUedaCheck { slack, satisfied: slack >= -1e-12 })
}

/// Locally extractable work from a qubit Gibbs state with `H = |1⟩⟨1|` when
/// the environment is measured by a second party.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SteeringBound {
    /// `η = (e^{−β} − 1)/(e^{−β} + 1)`.
    pub eta: f64,
    /// Upper bound for any local-hidden-state model.
    pub classical_bound: f64,
    /// `(1 + η)/2`, reached by steering a pure entangled purification.
    pub optimal: f64,
    pub quantum_advantage: bool,
}

pub fn steering_work_bound(beta: f64) -> Result<SteeringBound> {
    if !beta.is_finite() {
        return Err(Error::Domain(format!("β must be finite, got {beta}")));
    }
    let eta = -(0.5 * beta).tanh();
    let s = (1.0 - eta * eta).max(0.0).sqrt();
    let classical_bound = (eta * (s + eta + 1.0) + std::f64::consts::SQRT_2 * s) / (2.0 * (s + 1.0));
    let optimal = 0.5 * (1.0 + eta);
    Ok(SteeringBound { eta, classical_bound, optimal, quantum_advantage: optimal > classical_bound })
}

/// System-meter energetics of a measurement-fuelled engine.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementEngine {
    /// Mixing angle `θ = arctan(g/δ)`.
    pub theta: f64,
    /// Energy `δ sin²θ` deposited by the measurement.
    pub e_m: f64,
    /// Entanglement entropy of the system-meter state.
    pub s_m: Bits,
    pub work: f64,
}

pub fn measurement_engine_energetics(g: f64, delta: f64) -> Result<MeasurementEngine> {
    if !(delta > 0.0) || !delta.is_finite() {
        return Err(Error::Domain(format!("detuning δ must be positive, got {delta}")));
    }
    if !(g >= 0.0) || !g.is_finite() {
        return Err(Error::Domain(format!("coupling g must be ≥ 0, got {g}")));
    }
    let theta = (g / delta).atan();
    let s2 = theta.sin().powi(2);
    Ok(MeasurementEngine { theta, e_m: delta * s2, s_m: binary_entropy(s2.min(1.0))?, work: delta })
}
