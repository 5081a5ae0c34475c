//! Brute-force dense ground truth.
//!
//! Plain Gaussian elimination with first-nonzero pivoting. Nothing here
//! depends on the banded recurrences; only [`DenseMatrix`] and the scalar
//! fields are used.

#![allow(clippy::needless_range_loop)]

use std::collections::HashMap;

use crate::dense::DenseMatrix;
use crate::error::{HeptaError, Result};
use crate::scalar::Field;

/// Exact determinant by row reduction with swap-sign tracking.
pub fn dense_det<F: Field>(m: &DenseMatrix<F>) -> F {
    let n = m.n();
    let mut a: Vec<Vec<F>> = m.rows().map(<[F]>::to_vec).collect();
    let mut det = F::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return F::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        let pivot = a[col][col].clone();
        det = det * &pivot;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone() / &pivot;
            for c in col..n {
                let delta = factor.clone() * &a[col][c];
                a[r][c] = a[r][c].clone() - delta;
            }
        }
    }
    det
}

/// Exact inverse by Gauss-Jordan on `[M | I]`.
pub fn dense_inverse<F: Field>(m: &DenseMatrix<F>) -> Result<DenseMatrix<F>> {
    let n = m.n();
    let mut a: Vec<Vec<F>> = m
        .rows()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.to_vec();
            r.extend((0..n).map(|j| if i == j { F::one() } else { F::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or(HeptaError::Singular)?;
        a.swap(p, col);
        let pivot = a[col][col].clone();
        for c in 0..2 * n {
            a[col][c] = a[col][c].clone() / &pivot;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for c in 0..2 * n {
                let delta = factor.clone() * &a[col][c];
                a[r][c] = a[r][c].clone() - delta;
            }
        }
    }
    DenseMatrix::from_rows(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Laplace expansion along rows with memoisation over column subsets.
///
/// Independent of elimination; O(n·2^n), intended for n ≤ 12 or so.
pub fn cofactor_det<F: Field>(m: &DenseMatrix<F>) -> F {
    let n = m.n();
    assert!(n < 64, "cofactor expansion limited to small orders");
    let mut memo: HashMap<u64, F> = HashMap::new();
    minor(m, 0, (1u64 << n) - 1, &mut memo)
}

fn minor<F: Field>(m: &DenseMatrix<F>, row: usize, cols: u64, memo: &mut HashMap<u64, F>) -> F {
    if cols == 0 {
        return F::one();
    }
    if let Some(v) = memo.get(&cols) {
        return v.clone();
    }
    let mut acc = F::zero();
    let mut sign_positive = true;
    for c in 0..m.n() {
        if cols & (1 << c) == 0 {
            continue;
        }
        let a = &m[(row + 1, c + 1)];
        if !a.is_zero() {
            let sub = minor(m, row + 1, cols & !(1 << c), memo);
            let term = a.clone() * &sub;
            acc = if sign_positive { acc + term } else { acc - term };
        }
        sign_positive = !sign_positive;
    }
    memo.insert(cols, acc.clone());
    acc
}

/// Result of running the oracle on one matrix.
#[derive(Clone, PartialEq, Debug)]
pub struct OracleReport<F> {
    pub det: F,
    /// Present iff the matrix is nonsingular.
    pub inverse: Option<DenseMatrix<F>>,
    pub nonsingular: bool,
}

pub fn oracle_report<F: Field>(m: &DenseMatrix<F>) -> OracleReport<F> {
    let det = dense_det(m);
    let nonsingular = !det.is_zero();
    let inverse = nonsingular.then(|| dense_inverse(m).expect("nonzero determinant"));
    OracleReport {
        det,
        inverse,
        nonsingular,
    }
}

/// Entrywise difference between two matrices.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct Comparison {
    /// 1-based positions that differ.
    pub mismatches: Vec<(usize, usize)>,
    /// Largest absolute difference, for fields with a magnitude.
    pub max_abs_diff: Option<f64>,
}

impl Comparison {
    pub fn is_equal(&self) -> bool {
        self.mismatches.is_empty()
    }
}

pub fn compare<F: Field>(a: &DenseMatrix<F>, b: &DenseMatrix<F>) -> Result<Comparison> {
    if a.n() != b.n() {
        return Err(HeptaError::DimensionMismatch {
            left: a.n(),
            right: b.n(),
        });
    }
    let n = a.n();
    let mut out = Comparison::default();
    for i in 1..=n {
        for j in 1..=n {
            let (x, y) = (&a[(i, j)], &b[(i, j)]);
            if x != y {
                out.mismatches.push((i, j));
            }
            if let (Some(_), Some(_)) = (x.magnitude(), y.magnitude()) {
                let d = (x.clone() - y).magnitude().unwrap_or(0.0);
                out.max_abs_diff = Some(out.max_abs_diff.unwrap_or(0.0).max(d));
            }
        }
    }
    Ok(out)
}
