//! Dense operators and quantum states on small Hilbert spaces.
//!
//! Every function of an operator (exponential, logarithm, entropy) goes
//! through the hermitian eigendecomposition. Entropies and matrix functions
//! are basis independent, so degenerate eigenvalues need no tie-breaking.
//!
//! Basis convention for a single qubit: index 0 is `|0⟩` (ground), index 1
//! is `|1⟩` (excited), `σ_z = diag(1, −1)` so `σ_z|1⟩ = −|1⟩`, and
//! `σ⁻ = |0⟩⟨1|`. Composite indices are row-major: the first factor of a
//! tensor product is the most significant digit.

use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Max-abs tolerance on `A − A†` for the hermiticity predicate.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Tolerance on `tr ρ − 1`.
pub const TRACE_TOL: f64 = 1e-10;
/// Most negative eigenvalue accepted in a density matrix.
pub const POSITIVITY_TOL: f64 = 1e-10;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Square complex matrix with finite entries.
#[derive(Clone, Debug, PartialEq)]
pub struct Operator {
    m: DMatrix<C64>,
}

impl Operator {
    pub fn new(m: DMatrix<C64>) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::NotSquare { rows: m.nrows(), cols: m.ncols() });
        }
        if m.nrows() == 0 {
            return Err(Error::Domain("operator dimension must be positive".into()));
        }
        if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Operator { m })
    }

    /// Builds a `dim × dim` operator from row-major entries.
    pub fn from_rows(dim: usize, entries: &[C64]) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim, got: entries.len() });
        }
        Operator::new(DMatrix::from_row_slice(dim, dim, entries))
    }

    pub fn from_real_rows(dim: usize, entries: &[f64]) -> Result<Self> {
        let z: Vec<C64> = entries.iter().map(|&x| c(x, 0.0)).collect();
        Operator::from_rows(dim, &z)
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let n = values.len();
        let mut m = DMatrix::from_element(n, n, ZERO);
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = c(v, 0.0);
        }
        Operator { m }
    }

    pub fn identity(dim: usize) -> Self {
        Operator { m: DMatrix::identity(dim, dim) }
    }

    pub fn zeros(dim: usize) -> Self {
        Operator { m: DMatrix::from_element(dim, dim, ZERO) }
    }

    /// `|i⟩⟨j|` in dimension `dim`.
    pub fn ket_bra(i: usize, j: usize, dim: usize) -> Self {
        let mut m = DMatrix::from_element(dim, dim, ZERO);
        m[(i, j)] = ONE;
        Operator { m }
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.m
    }

    pub fn into_matrix(self) -> DMatrix<C64> {
        self.m
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.m[(i, j)]
    }

    pub fn adjoint(&self) -> Operator {
        Operator { m: self.m.adjoint() }
    }

    pub fn trace(&self) -> C64 {
        self.m.trace()
    }

    pub fn scale(&self, s: f64) -> Operator {
        Operator { m: &self.m * c(s, 0.0) }
    }

    pub fn scale_c(&self, s: C64) -> Operator {
        Operator { m: &self.m * s }
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.m.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Max-abs deviation from hermiticity.
    pub fn hermiticity_error(&self) -> f64 {
        (&self.m - self.m.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermiticity_error() <= HERMITIAN_TOL
    }

    pub fn unitarity_error(&self) -> f64 {
        let p = self.m.adjoint() * &self.m;
        (p - DMatrix::<C64>::identity(self.dim(), self.dim()))
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_error() <= tol
    }

    /// `(A + A†)/2`.
    pub fn hermitian_part(&self) -> Operator {
        Operator { m: (&self.m + self.m.adjoint()) * c(0.5, 0.0) }
    }

    pub fn commutator(&self, other: &Operator) -> Operator {
        Operator { m: &self.m * &other.m - &other.m * &self.m }
    }

    pub fn anticommutator(&self, other: &Operator) -> Operator {
        Operator { m: &self.m * &other.m + &other.m * &self.m }
    }

    fn require_hermitian(&self) -> Result<()> {
        let e = self.hermiticity_error();
        if e > HERMITIAN_TOL * self.max_abs().max(1.0) {
            return Err(Error::NotHermitian(e));
        }
        Ok(())
    }

    /// Eigenvalues (ascending) and matching orthonormal eigenvectors (columns).
    pub fn eigh(&self) -> Result<(Vec<f64>, DMatrix<C64>)> {
        self.require_hermitian()?;
        let herm = self.hermitian_part();
        let eig = herm.m.symmetric_eigen();
        let mut order: Vec<usize> = (0..self.dim()).collect();
        order.sort_by(|&a, &b| {
            eig.eigenvalues[a]
                .partial_cmp(&eig.eigenvalues[b])
                .unwrap_or(std::cmp::Ordering::Equal)
                .then(a.cmp(&b))
        });
        let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
        let mut vecs = DMatrix::from_element(self.dim(), self.dim(), ZERO);
        for (k, &i) in order.iter().enumerate() {
            vecs.set_column(k, &eig.eigenvectors.column(i));
        }
        Ok((values, vecs))
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        Ok(self.eigh()?.0)
    }

    /// Applies a real function to a hermitian operator through its spectrum.
    pub fn map_hermitian<F: Fn(f64) -> f64>(&self, f: F) -> Result<Operator> {
        let (vals, vecs) = self.eigh()?;
        Ok(spectral_sum(&vals, &vecs, |x| c(f(x), 0.0)))
    }

    /// `exp(−i H t)` for hermitian `H`.
    pub fn unitary_evolution(&self, t: f64) -> Result<Operator> {
        let (vals, vecs) = self.eigh()?;
        Ok(spectral_sum(&vals, &vecs, |x| C64::from_polar(1.0, -x * t)))
    }

    /// `U · self · U†`.
    pub fn conjugate_by(&self, u: &Operator) -> Operator {
        Operator { m: &u.m * &self.m * u.m.adjoint() }
    }
}

fn spectral_sum<F: Fn(f64) -> C64>(vals: &[f64], vecs: &DMatrix<C64>, f: F) -> Operator {
    let n = vals.len();
    let mut scaled = vecs.clone();
    for (k, &v) in vals.iter().enumerate() {
        let fv = f(v);
        for i in 0..n {
            scaled[(i, k)] *= fv;
        }
    }
    Operator { m: scaled * vecs.adjoint() }
}

impl Add for &Operator {
    type Output = Operator;
    fn add(self, rhs: &Operator) -> Operator {
        Operator { m: &self.m + &rhs.m }
    }
}

impl Add for Operator {
    type Output = Operator;
    fn add(self, rhs: Operator) -> Operator {
        Operator { m: self.m + rhs.m }
    }
}

impl Sub for &Operator {
    type Output = Operator;
    fn sub(self, rhs: &Operator) -> Operator {
        Operator { m: &self.m - &rhs.m }
    }
}

impl Sub for Operator {
    type Output = Operator;
    fn sub(self, rhs: Operator) -> Operator {
        Operator { m: self.m - rhs.m }
    }
}

impl Mul for &Operator {
    type Output = Operator;
    fn mul(self, rhs: &Operator) -> Operator {
        Operator { m: &self.m * &rhs.m }
    }
}

impl Mul for Operator {
    type Output = Operator;
    fn mul(self, rhs: Operator) -> Operator {
        Operator { m: self.m * rhs.m }
    }
}

impl Neg for Operator {
    type Output = Operator;
    fn neg(self) -> Operator {
        Operator { m: -self.m }
    }
}

/// Pauli and ladder operators of a single qubit.
pub mod qubit {
    use super::*;

    pub fn sigma_x() -> Operator {
        Operator::from_real_rows(2, &[0.0, 1.0, 1.0, 0.0]).expect("static")
    }

    pub fn sigma_y() -> Operator {
        Operator::from_rows(2, &[ZERO, c(0.0, -1.0), c(0.0, 1.0), ZERO]).expect("static")
    }

    pub fn sigma_z() -> Operator {
        Operator::diagonal(&[1.0, -1.0])
    }

    /// `σ⁻ = |0⟩⟨1|`.
    pub fn sigma_minus() -> Operator {
        Operator::ket_bra(0, 1, 2)
    }

    /// `σ⁺ = |1⟩⟨0|`.
    pub fn sigma_plus() -> Operator {
        Operator::ket_bra(1, 0, 2)
    }

    /// `σ⁺σ⁻ = |1⟩⟨1|`, the excitation number.
    pub fn excitation() -> Operator {
        Operator::ket_bra(1, 1, 2)
    }
}

/// Kronecker product `a ⊗ b`.
pub fn tensor_product(a: &Operator, b: &Operator) -> Operator {
    Operator { m: a.m.kronecker(&b.m) }
}

/// Tensor product of an ordered list of factors.
pub fn tensor_all(factors: &[Operator]) -> Result<Operator> {
    let (first, rest) = factors
        .split_first()
        .ok_or_else(|| Error::Domain("empty tensor product".into()))?;
    Ok(rest.iter().fold(first.clone(), |acc, f| tensor_product(&acc, f)))
}

/// Places `op` on subsystem `site` with identities elsewhere.
pub fn embed(op: &Operator, site: usize, fact: &HilbertFactorization) -> Result<Operator> {
    let dims = fact.dims();
    if site >= dims.len() {
        return Err(Error::Domain(format!("site {site} outside {} factors", dims.len())));
    }
    if op.dim() != dims[site] {
        return Err(Error::DimensionMismatch { expected: dims[site], got: op.dim() });
    }
    let factors: Vec<Operator> = dims
        .iter()
        .enumerate()
        .map(|(k, &d)| if k == site { op.clone() } else { Operator::identity(d) })
        .collect();
    tensor_all(&factors)
}

/// Ordered subsystem dimensions of a composite space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertFactorization {
    dims: Vec<usize>,
}

impl HilbertFactorization {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() || dims.contains(&0) {
            return Err(Error::InvalidFactorization { dims, dim: 0 });
        }
        Ok(HilbertFactorization { dims })
    }

    pub fn bipartite(a: usize, b: usize) -> Result<Self> {
        Self::new(vec![a, b])
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn check(&self, dim: usize) -> Result<()> {
        if self.total_dim() != dim {
            return Err(Error::InvalidFactorization { dims: self.dims.clone(), dim });
        }
        Ok(())
    }
}

/// Hermitian, unit-trace, positive semidefinite operator.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    op: Operator,
}

impl DensityMatrix {
    /// Validates hermiticity, trace and positivity against the crate tolerances.
    pub fn new(op: Operator) -> Result<Self> {
        let herr = op.hermiticity_error();
        if herr > HERMITIAN_TOL {
            return Err(Error::InvalidState(format!("hermiticity error {herr:e}")));
        }
        let tr = op.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(Error::InvalidState(format!("trace {tr}")));
        }
        let op = op.hermitian_part();
        let min = op.eigenvalues()?.first().copied().unwrap_or(0.0);
        if min < -POSITIVITY_TOL {
            return Err(Error::InvalidState(format!("negative eigenvalue {min:e}")));
        }
        Ok(DensityMatrix { op })
    }

    /// Hermitizes and trace-normalizes before validating; for states produced
    /// by numerically exact constructions that carry rounding noise.
    pub fn from_operator_normalized(op: Operator) -> Result<Self> {
        let h = op.hermitian_part();
        let tr = h.trace().re;
        if !(tr.abs() > 0.0) {
            return Err(Error::InvalidState("zero trace".into()));
        }
        DensityMatrix::new(h.scale(1.0 / tr))
    }

    pub fn from_diagonal(p: &[f64]) -> Result<Self> {
        DensityMatrix::new(Operator::diagonal(p))
    }

    /// `|ψ⟩⟨ψ|` for a normalized (or normalizable) amplitude vector.
    pub fn pure(psi: &[C64]) -> Result<Self> {
        let norm: f64 = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if !(norm > 0.0) {
            return Err(Error::InvalidState("zero vector".into()));
        }
        let n = psi.len();
        let mut m = DMatrix::from_element(n, n, ZERO);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = psi[i] * psi[j].conj() / (norm * norm);
            }
        }
        DensityMatrix::from_operator_normalized(Operator::new(m)?)
    }

    /// Basis state `|k⟩⟨k|`.
    pub fn basis(k: usize, dim: usize) -> Result<Self> {
        if k >= dim {
            return Err(Error::Domain(format!("basis index {k} >= {dim}")));
        }
        DensityMatrix::new(Operator::ket_bra(k, k, dim))
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        DensityMatrix { op: Operator::identity(dim).scale(1.0 / dim as f64) }
    }

    pub fn dim(&self) -> usize {
        self.op.dim()
    }

    pub fn as_operator(&self) -> &Operator {
        &self.op
    }

    pub fn into_operator(self) -> Operator {
        self.op
    }

    pub fn population(&self, k: usize) -> f64 {
        self.op.get(k, k).re
    }

    pub fn populations(&self) -> Vec<f64> {
        (0..self.dim()).map(|k| self.population(k)).collect()
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        self.op.eigenvalues().expect("density matrices are hermitian")
    }

    pub fn conjugate_by(&self, u: &Operator) -> Result<Self> {
        DensityMatrix::from_operator_normalized(self.op.conjugate_by(u))
    }
}

impl DensityMatrix {
    pub fn tensor(&self, other: &DensityMatrix) -> DensityMatrix {
        DensityMatrix { op: tensor_product(&self.op, &other.op) }
    }
}

/// Reduced operator on the subsystems listed in `keep` (kept in their
/// original order).
pub fn partial_trace_operator(
    op: &Operator,
    fact: &HilbertFactorization,
    keep: &[usize],
) -> Result<Operator> {
    fact.check(op.dim())?;
    let dims = fact.dims();
    let mut keep_sorted: Vec<usize> = keep.to_vec();
    keep_sorted.sort_unstable();
    keep_sorted.dedup();
    if keep_sorted.iter().any(|&k| k >= dims.len()) {
        return Err(Error::Domain(format!("keep set {keep:?} outside {} factors", dims.len())));
    }
    let traced: Vec<usize> = (0..dims.len()).filter(|k| !keep_sorted.contains(k)).collect();
    let kept_dims: Vec<usize> = keep_sorted.iter().map(|&k| dims[k]).collect();
    let traced_dims: Vec<usize> = traced.iter().map(|&k| dims[k]).collect();
    let dk: usize = kept_dims.iter().product();
    let dt: usize = traced_dims.iter().product();

    // strides of each subsystem in the full row-major index
    let mut strides = vec![1usize; dims.len()];
    for k in (0..dims.len().saturating_sub(1)).rev() {
        strides[k] = strides[k + 1] * dims[k + 1];
    }
    let compose = |sub: &[usize], sub_dims: &[usize], idx: usize, out: &mut usize| {
        let mut rem = idx;
        for (pos, &site) in sub.iter().enumerate().rev() {
            let d = sub_dims[pos];
            *out += (rem % d) * strides[site];
            rem /= d;
        }
    };

    let mut m = DMatrix::from_element(dk, dk, ZERO);
    for r in 0..dk {
        let mut row_base = 0;
        compose(&keep_sorted, &kept_dims, r, &mut row_base);
        for col in 0..dk {
            let mut col_base = 0;
            compose(&keep_sorted, &kept_dims, col, &mut col_base);
            let mut acc = ZERO;
            for t in 0..dt {
                let mut off = 0;
                compose(&traced, &traced_dims, t, &mut off);
                acc += op.m[(row_base + off, col_base + off)];
            }
            m[(r, col)] = acc;
        }
    }
    Ok(Operator { m })
}

/// Reduced state on the subsystems in `keep`.
pub fn partial_trace(
    rho: &DensityMatrix,
    fact: &HilbertFactorization,
    keep: &[usize],
) -> Result<DensityMatrix> {
    let reduced = partial_trace_operator(rho.as_operator(), fact, keep)?;
    DensityMatrix::from_operator_normalized(reduced)
}

/// Thermal state `exp(−βH)/Z` for finite `beta` (negative values describe
/// population-inverted states).
pub fn gibbs_state(h: &Operator, beta: f64) -> Result<DensityMatrix> {
    if !beta.is_finite() {
        return Err(Error::Domain("beta must be finite; use ground_state for β → ∞".into()));
    }
    let (vals, vecs) = h.eigh()?;
    // shift by the dominant energy to keep exponents bounded
    let shift = if beta >= 0.0 { vals[0] } else { *vals.last().expect("non-empty") };
    let weights: Vec<f64> = vals.iter().map(|&e| (-beta * (e - shift)).exp()).collect();
    let z: f64 = weights.iter().sum();
    let op = spectral_sum(&vals, &vecs, |e| c((-beta * (e - shift)).exp() / z, 0.0));
    DensityMatrix::from_operator_normalized(op)
}

/// Zero-temperature limit of [`gibbs_state`]: uniform mixture over the
/// ground manifold (levels within 1e-12 of the minimum).
pub fn ground_state(h: &Operator) -> Result<DensityMatrix> {
    let (vals, vecs) = h.eigh()?;
    let e0 = vals[0];
    let tol = 1e-12 * vals.iter().map(|v| v.abs()).fold(1.0, f64::max);
    let count = vals.iter().filter(|&&e| e - e0 <= tol).count() as f64;
    let op = spectral_sum(&vals, &vecs, |e| if e - e0 <= tol { c(1.0 / count, 0.0) } else { ZERO });
    DensityMatrix::from_operator_normalized(op)
}

/// `−Σ λ ln λ` in nats, with `0 ln 0 = 0`.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    shannon_nats(&rho.eigenvalues())
}

/// Shannon entropy (nats) of a probability vector; clips rounding negatives.
pub fn shannon_nats(p: &[f64]) -> f64 {
    p.iter()
        .filter(|&&x| x > 0.0)
        .map(|&x| -x * x.ln())
        .sum::<f64>()
}

/// Outcome of a relative-entropy evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelativeEntropy {
    /// Value in nats; `+∞` when the support condition fails.
    pub value: f64,
    /// True when `supp ρ ⊄ supp σ`.
    pub support_violated: bool,
}

const SUPPORT_TOL: f64 = 1e-12;

/// `S(ρ‖σ) = tr[ρ(ln ρ − ln σ)]`.
pub fn relative_entropy(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<RelativeEntropy> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch { expected: rho.dim(), got: sigma.dim() });
    }
    let (svals, svecs) = sigma.as_operator().eigh()?;
    // −tr[ρ ln σ] = −Σ_k ⟨k|ρ|k⟩ ln s_k over σ's eigenbasis
    let rho_in_sigma = svecs.adjoint() * rho.as_operator().matrix() * &svecs;
    let mut cross = 0.0;
    for (k, &s) in svals.iter().enumerate() {
        let w = rho_in_sigma[(k, k)].re;
        if s <= SUPPORT_TOL {
            if w > SUPPORT_TOL {
                return Ok(RelativeEntropy { value: f64::INFINITY, support_violated: true });
            }
            continue;
        }
        cross -= w * s.ln();
    }
    let value = -von_neumann_entropy(rho) + cross;
    Ok(RelativeEntropy { value, support_violated: false })
}

/// `tr[ρ O]`.
pub fn expectation(rho: &DensityMatrix, obs: &Operator) -> Result<C64> {
    if rho.dim() != obs.dim() {
        return Err(Error::DimensionMismatch { expected: rho.dim(), got: obs.dim() });
    }
    Ok((rho.as_operator().matrix() * obs.matrix()).trace())
}

/// Real part of `tr[ρ O]`, for hermitian observables.
pub fn expectation_real(rho: &DensityMatrix, obs: &Operator) -> Result<f64> {
    Ok(expectation(rho, obs)?.re)
}

#[cfg(test)]
mod tests {
    use super::qubit::*;
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn tensor_identities() {
        let i2 = Operator::identity(2);
        assert_eq!(tensor_product(&i2, &i2), Operator::identity(4));
        let zi = tensor_product(&sigma_z(), &i2);
        assert_eq!(zi, Operator::diagonal(&[1.0, 1.0, -1.0, -1.0]));
    }

    #[test]
    fn xx_flips_both_qubits() {
        // explicit index expansion: (σx⊗σx)_{(ab),(cd)} = σx_{ac} σx_{bd}
        let xx = tensor_product(&sigma_x(), &sigma_x());
        let sx = sigma_x();
        for r in 0..4 {
            for col in 0..4 {
                let want = sx.get(r / 2, col / 2) * sx.get(r % 2, col % 2);
                assert_eq!(xx.get(r, col), want);
            }
        }
        // |00⟩ = e_0 maps to |11⟩ = e_3
        let col0: Vec<C64> = (0..4).map(|r| xx.get(r, 0)).collect();
        assert_eq!(col0, vec![ZERO, ZERO, ZERO, ONE]);
    }

    #[test]
    fn bell_state_reduces_to_mixed() {
        let s = 1.0 / 2f64.sqrt();
        let bell = DensityMatrix::pure(&[c(s, 0.0), ZERO, ZERO, c(s, 0.0)]).unwrap();
        let fact = HilbertFactorization::bipartite(2, 2).unwrap();
        let red = partial_trace(&bell, &fact, &[0]).unwrap();
        assert!((red.as_operator() - DensityMatrix::maximally_mixed(2).as_operator()).max_abs() < 1e-12);
    }

    #[test]
    fn partial_trace_rejects_bad_factorization() {
        let rho = DensityMatrix::maximally_mixed(4);
        let fact = HilbertFactorization::bipartite(2, 3).unwrap();
        assert!(matches!(
            partial_trace(&rho, &fact, &[0]),
            Err(Error::InvalidFactorization { .. })
        ));
    }

    #[test]
    fn gibbs_examples() {
        let h = Operator::diagonal(&[0.0, 1.0]);
        let inf = gibbs_state(&h, 0.0).unwrap();
        assert!((inf.as_operator() - DensityMatrix::maximally_mixed(2).as_operator()).max_abs() < 1e-15);
        let g = gibbs_state(&h, 1.0).unwrap();
        let pe = 1.0 / (1.0 + 1f64.exp());
        assert!(close(g.population(1), pe, 1e-14));
        assert!(close(pe, 0.268941, 1e-6));
        let gs = ground_state(&h).unwrap();
        assert_eq!(gs.populations(), vec![1.0, 0.0]);
        // expectation of H in that thermal state
        assert!(close(expectation_real(&g, &h).unwrap(), pe, 1e-14));
    }

    #[test]
    fn gibbs_rejects_non_hermitian() {
        let h = Operator::ket_bra(0, 1, 2);
        assert!(matches!(gibbs_state(&h, 1.0), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn entropy_examples() {
        assert!(close(von_neumann_entropy(&DensityMatrix::basis(0, 3).unwrap()), 0.0, 1e-15));
        assert!(close(von_neumann_entropy(&DensityMatrix::maximally_mixed(2)), 2f64.ln(), 1e-14));
        let p = 1.0 / (1.0 + 1f64.exp());
        let rho = DensityMatrix::from_diagonal(&[1.0 - p, p]).unwrap();
        let want = -p * p.ln() - (1.0 - p) * (1.0 - p).ln();
        assert!(close(von_neumann_entropy(&rho), want, 1e-14));
    }

    #[test]
    fn relative_entropy_examples() {
        let sigma = DensityMatrix::from_diagonal(&[0.9, 0.1]).unwrap();
        let same = relative_entropy(&sigma, &sigma).unwrap();
        assert!(close(same.value, 0.0, 1e-14));
        let mixed = DensityMatrix::maximally_mixed(2);
        // shared eigenbasis: Σ p ln p − Σ p ln q
        let want = 0.5f64.ln() - 0.5 * (0.9f64.ln() + 0.1f64.ln());
        assert!(close(relative_entropy(&mixed, &sigma).unwrap().value, want, 1e-13));
        let pure0 = DensityMatrix::basis(0, 2).unwrap();
        assert!(close(relative_entropy(&pure0, &mixed).unwrap().value, 2f64.ln(), 1e-14));
        let r = relative_entropy(&mixed, &pure0).unwrap();
        assert!(r.support_violated && r.value.is_infinite());
    }

    #[test]
    fn expectation_examples() {
        let rho = DensityMatrix::basis(1, 2).unwrap();
        assert!(close(expectation_real(&rho, &sigma_z()).unwrap(), -1.0, 0.0));
        assert!(close(expectation_real(&rho, &Operator::identity(2)).unwrap(), 1.0, 0.0));
        assert!(expectation(&rho, &Operator::identity(3)).is_err());
    }

    #[test]
    fn density_validation() {
        assert!(DensityMatrix::from_diagonal(&[0.7, 0.7]).is_err());
        assert!(DensityMatrix::from_diagonal(&[1.2, -0.2]).is_err());
        assert!(DensityMatrix::new(Operator::ket_bra(0, 1, 2).scale(0.1) + Operator::diagonal(&[0.5, 0.5])).is_err());
    }

    #[test]
    fn unitary_evolution_is_unitary() {
        let h = tensor_product(&sigma_x(), &sigma_y()) + tensor_product(&sigma_z(), &Operator::identity(2));
        let u = h.unitary_evolution(0.37).unwrap();
        assert!(u.is_unitary(1e-12));
    }
}
