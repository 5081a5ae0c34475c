//! Instances shared by the benchmarks.

use hepta::floating::to_float;
use hepta::{random_instance, CyclicHeptaMatrix, Float, Profile, Rational};

/// Fixed seed so every run measures the same matrices.
pub const SEED: u64 = 7;

/// Diagonally dominant, so both backends factor without pivot trouble.
pub fn exact_instance(n: usize) -> CyclicHeptaMatrix<Rational> {
    random_instance(n, SEED, Profile::DiagonallyDominant).expect("n >= 8")
}

pub fn float_instance(n: usize) -> CyclicHeptaMatrix<Float> {
    to_float(&exact_instance(n))
}

/// `r = H·(1, 2, …, n)`, so the solution is known.
pub fn exact_rhs(h: &CyclicHeptaMatrix<Rational>) -> Vec<Rational> {
    let x: Vec<Rational> = (1..=h.n()).map(Rational::from_integer).collect();
    h.mul_vec(&x).expect("length matches")
}

pub fn float_rhs(h: &CyclicHeptaMatrix<Float>) -> Vec<Float> {
    let x: Vec<Float> = (1..=h.n()).map(|k| Float(k as f64)).collect();
    h.mul_vec(&x).expect("length matches")
}
