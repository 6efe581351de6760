#![allow(dead_code)]

use nalgebra::DMatrix;
use qheat::hilbert::c;
use qheat::{DensityMatrix, Operator, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_matrix(r: &mut ChaCha8Rng, d: usize) -> DMatrix<C64> {
    DMatrix::from_fn(d, d, |_, _| c(r.random_range(-1.0..1.0), r.random_range(-1.0..1.0)))
}

pub fn random_hermitian(r: &mut ChaCha8Rng, d: usize) -> Operator {
    let a = random_matrix(r, d);
    Operator::new((&a + a.adjoint()) * c(0.5, 0.0)).unwrap()
}

/// Full-rank state `AA†/tr` mixed with a little identity.
pub fn random_state(r: &mut ChaCha8Rng, d: usize) -> DensityMatrix {
    let a = random_matrix(r, d);
    let m = &a * a.adjoint() + DMatrix::identity(d, d) * c(1e-3, 0.0);
    DensityMatrix::from_operator_normalized(Operator::new(m).unwrap()).unwrap()
}

pub fn random_unitary(r: &mut ChaCha8Rng, d: usize) -> Operator {
    random_hermitian(r, d).unitary_evolution(2.0).unwrap()
}

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}
