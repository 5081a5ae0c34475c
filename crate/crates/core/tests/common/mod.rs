#![allow(dead_code)]

use std::path::PathBuf;

use hepta::io::{dense_from_csv, matrix_from_json, rhs_from_text};
use hepta::{CyclicHeptaMatrix, DenseMatrix, Rational};

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn fixture_text(name: &str) -> String {
    std::fs::read_to_string(fixture_path(name)).unwrap()
}

/// The 10x10 worked system.
pub fn hepta10() -> CyclicHeptaMatrix<Rational> {
    matrix_from_json(&fixture_text("hepta10.json")).unwrap()
}

pub fn hepta10_rhs() -> Vec<Rational> {
    rhs_from_text(&fixture_text("hepta10_rhs.json")).unwrap().remove(0)
}

pub fn hepta10_inverse() -> DenseMatrix<Rational> {
    dense_from_csv(&fixture_text("hepta10_inverse.csv")).unwrap()
}

pub fn singular10() -> CyclicHeptaMatrix<Rational> {
    matrix_from_json(&fixture_text("singular10.json")).unwrap()
}

pub fn q(v: i64) -> Rational {
    Rational::from(v)
}

pub fn qs(s: &str) -> Rational {
    s.parse().unwrap()
}
