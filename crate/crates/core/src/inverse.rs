//! Column-by-column inversion from the bordered factors.
//!
//! The last five columns of `H⁻¹` ("seed columns") are solved directly from
//! the factors: the forward half of `L·U·x = e_j` collapses to at most five
//! closed-form entries, followed by one upper sweep. The remaining columns
//! come from `H⁻¹·H = I` read along column `j+3` of `H`:
//!
//! ```text
//! C_j·Col_j = E_{j+3} − A_{j+1}Col_{j+1} − a_{j+2}Col_{j+2} − d_{j+3}Col_{j+3}
//!                     − b_{j+4}Col_{j+4} − B_{j+5}Col_{j+5} − D_{j+6}Col_{j+6}
//! ```
//!
//! for `j = n−5, …, 1` (the `D` term is absent for `j = n−5`).

use serde::Serialize;

use crate::dense::DenseMatrix;
use crate::error::{HeptaError, Result};
use crate::factor::FactorData;
use crate::hepta::{Band, CyclicHeptaMatrix};
use crate::scalar::Field;

/// How the columns left of the seeds are produced.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ColumnStrategy {
    /// Backward recurrence dividing by `C_j`. Exact, O(n) per column, but
    /// amplifies rounding error geometrically in floating point.
    Recurrence,
    /// Forward and backward substitution through the factors for every column.
    Substitution,
}

/// Inverse together with the substitutions that were needed to compute it.
#[derive(Clone, PartialEq, Debug)]
pub struct InverseResult<F> {
    pub inverse: DenseMatrix<F>,
    /// Indices `i ≤ n−5` where a zero `C_i` was replaced by `t`.
    pub c_substitutions: Vec<usize>,
    /// Indices `i ≥ 6` where a zero `B_i` was replaced by `t` (opt-in).
    pub b_substitutions: Vec<usize>,
    /// Pivots replaced by `t` during factorization.
    pub pivot_overrides: Vec<usize>,
}

/// Nonzero entries of `L⁻¹·e_{n−m}`, `m = 0..=4`, as a dense vector.
pub fn seed_rhs<F: Field>(fd: &FactorData<F>, m: usize) -> Vec<F> {
    assert!(m <= 4, "only five seed columns");
    let n = fd.n;
    let (f, e, k, h) = (&fd.f, &fd.e, &fd.k, &fd.h);
    let mut y = vec![F::zero(); n];
    let mut put = |i: usize, v: F| y[i - 1] = v;
    match m {
        0 => {
            put(n, F::one());
        }
        1 => {
            put(n - 1, F::one());
            put(n, -h[n - 1].clone());
        }
        2 => {
            put(n - 2, F::one());
            put(n - 1, -k[n - 2].clone());
            put(n, h[n - 1].clone() * &k[n - 2] - &h[n - 2]);
        }
        3 => {
            // y_{n-1} = k_{n-2}f_{n-2} − k_{n-3}
            let yn1 = k[n - 2].clone() * &f[n - 2] - &k[n - 3];
            let yn = h[n - 2].clone() * &f[n - 2] - &h[n - 3] - h[n - 1].clone() * &yn1;
            put(n - 3, F::one());
            put(n - 2, -f[n - 2].clone());
            put(n - 1, yn1);
            put(n, yn);
        }
        _ => {
            // s = e_{n-2} − f_{n-2}f_{n-3}
            let s = e[n - 2].clone() - f[n - 2].clone() * &f[n - 3];
            let yn1 = k[n - 3].clone() * &f[n - 3] - &k[n - 4] + k[n - 2].clone() * &s;
            let yn = h[n - 3].clone() * &f[n - 3] - &h[n - 4] + h[n - 2].clone() * &s
                - h[n - 1].clone() * &yn1;
            put(n - 4, F::one());
            put(n - 3, -f[n - 3].clone());
            put(n - 2, -s);
            put(n - 1, yn1);
            put(n, yn);
        }
    }
    y
}

/// Solves `L·y = r` using the banded rows and the two dense border rows.
pub fn forward_substitute<F: Field>(fd: &FactorData<F>, r: &[F]) -> Vec<F> {
    let n = fd.n;
    assert_eq!(r.len(), n);
    let mut y: Vec<F> = Vec::with_capacity(n);
    for i in 1..=n - 2 {
        let mut acc = r[i - 1].clone();
        if i >= 4 {
            acc = acc - fd.lower3[i].clone() * &y[i - 4];
        }
        if i >= 3 {
            acc = acc - fd.e[i].clone() * &y[i - 3];
        }
        if i >= 2 {
            acc = acc - fd.f[i].clone() * &y[i - 2];
        }
        y.push(acc);
    }
    let yn1 = fd
        .k
        .values()
        .iter()
        .zip(&y)
        .fold(r[n - 2].clone(), |acc, (a, b)| acc - a.clone() * b);
    y.push(yn1);
    let yn = fd
        .h
        .values()
        .iter()
        .zip(&y)
        .fold(r[n - 1].clone(), |acc, (a, b)| acc - a.clone() * b);
    y.push(yn);
    y
}

/// Solves `U·x = y` from the bottom up.
pub fn back_substitute<F: Field>(fd: &FactorData<F>, y: &[F]) -> Vec<F> {
    assert_eq!(y.len(), fd.n);
    let mut x = y.to_vec();
    back_substitute_panel(fd, &mut Panel { data: &mut x, w: 1 });
    x
}

/// `w` columns stored row-interleaved: entry `i` of column `k` lives at
/// `(i - 1) * w + k`.
struct Panel<'a, F> {
    data: &'a mut [F],
    w: usize,
}

impl<F> Panel<'_, F> {
    fn at(&self, i: usize, k: usize) -> usize {
        (i - 1) * self.w + k
    }
}

/// `U⁻¹` applied in place to every column of the panel.
fn back_substitute_panel<F: Field>(fd: &FactorData<F>, p: &mut Panel<'_, F>) {
    let n = fd.n;
    for k in 0..p.w {
        let (xn, xn1) = (p.at(n, k), p.at(n - 1, k));
        p.data[xn] = p.data[xn].clone() / &fd.alpha[n];
        p.data[xn1] = (p.data[xn1].clone() - fd.v[n - 1].clone() * &p.data[xn]) / &fd.alpha[n - 1];
    }
    // Each row's coefficients side by side, absent band entries as zero.
    let zero = F::zero;
    let rows: Vec<[F; 6]> = (1..=n - 2)
        .map(|i| {
            [
                fd.g.get(i).cloned().unwrap_or_else(zero),
                fd.z.get(i).cloned().unwrap_or_else(zero),
                fd.c.get(i).cloned().unwrap_or_else(zero),
                fd.w[i].clone(),
                fd.v[i].clone(),
                fd.alpha[i].clone(),
            ]
        })
        .collect();
    for (i, [g, z, c, wi, vi, alpha]) in rows.iter().enumerate().rev().map(|(k, r)| (k + 1, r)) {
        for k in 0..p.w {
            let x = |r: usize| &p.data[p.at(r, k)];
            let mut acc = x(i).clone();
            if i <= n - 3 {
                acc = acc - g.clone() * x(i + 1);
            }
            if i <= n - 4 {
                acc = acc - z.clone() * x(i + 2);
            }
            if i <= n - 5 {
                acc = acc - c.clone() * x(i + 3);
            }
            acc = acc - wi.clone() * x(n - 1) - vi.clone() * x(n);
            let slot = p.at(i, k);
            p.data[slot] = acc / alpha;
        }
    }
}

/// `x = U⁻¹·L⁻¹·r`.
pub fn lu_solve<F: Field>(fd: &FactorData<F>, r: &[F]) -> Vec<F> {
    back_substitute(fd, &forward_substitute(fd, r))
}

/// Columns `n, n−1, n−2, n−3, n−4` of the inverse, in that order.
///
/// The five computations share nothing mutable; with `parallel` set they
/// run on scoped threads.
pub fn seed_columns<F: Field>(fd: &FactorData<F>, parallel: bool) -> [Vec<F>; 5] {
    let one = |m: usize| back_substitute(fd, &seed_rhs(fd, m));
    if !parallel {
        return std::array::from_fn(one);
    }
    std::thread::scope(|s| {
        let handles: Vec<_> = (0..5).map(|m| s.spawn(move || one(m))).collect();
        let mut cols = handles
            .into_iter()
            .map(|h| h.join().expect("seed column worker panicked"));
        std::array::from_fn(|_| cols.next().expect("five workers"))
    })
}

/// Columns `1..=n−5` from the seeds by the backward recurrence.
///
/// Returns all `n` columns, column 1 first. Every `C_j`, `j ≤ n−5`, must
/// be nonzero; a zero one means the caller skipped the substitution step.
pub fn back_columns<F: Field>(h: &CyclicHeptaMatrix<F>, seeds: [Vec<F>; 5]) -> Result<Vec<Vec<F>>> {
    let n = h.n();
    let mut cols: Vec<Vec<F>> = vec![Vec::new(); n];
    for (m, col) in seeds.into_iter().enumerate() {
        cols[n - 1 - m] = col;
    }
    for j in (1..=n - 5).rev() {
        let divisor = h.entry(Band::Super3, j);
        if divisor.is_zero() {
            return Err(HeptaError::ZeroBandDivisor { index: j });
        }
        cols[j - 1] = recur_column(h, &cols, j);
    }
    Ok(cols)
}

/// One step of the backward recurrence, producing `Col_j` from
/// `Col_{j+1} ..= Col_{j+6}` and column `j+3` of `H`.
pub fn recur_column<F: Field>(h: &CyclicHeptaMatrix<F>, cols: &[Vec<F>], j: usize) -> Vec<F> {
    let n = h.n();
    let row = j + 3;
    let mut terms: Vec<(&F, &Vec<F>)> = vec![
        (h.entry(Band::Super2, j + 1), &cols[j]),
        (h.entry(Band::Super1, j + 2), &cols[j + 1]),
        (h.entry(Band::Main, j + 3), &cols[j + 2]),
        (h.entry(Band::Sub1, j + 4), &cols[j + 3]),
        (h.entry(Band::Sub2, j + 5), &cols[j + 4]),
    ];
    if j + 6 <= n {
        terms.push((h.entry(Band::Sub3, j + 6), &cols[j + 5]));
    }
    terms.retain(|(coef, _)| !coef.is_zero());
    let divisor = h.entry(Band::Super3, j);
    (1..=n)
        .map(|i| {
            let basis = if i == row { F::one() } else { F::zero() };
            terms
                .iter()
                .fold(basis, |acc, (coef, col)| acc - (*coef).clone() * &col[i - 1])
                / divisor
        })
        .collect()
}

/// The inverse by substitution, `Col_j = U⁻¹L⁻¹e_j`.
pub fn substitution_inverse<F: Field>(fd: &FactorData<F>, seeds: [Vec<F>; 5]) -> DenseMatrix<F> {
    // Columns are solved in panels that share one sweep over the factors. A
    // panel lives in its own scratch buffer rather than in place: rows `n`
    // entries apart collide in the same cache sets once `n` is large.
    const PANEL: usize = 32;
    let n = fd.n;
    let mut m = DenseMatrix::zeros(n);
    let last = n - 5;
    let mut scratch = vec![F::zero(); n * PANEL.min(last)];
    for start in (1..=last).step_by(PANEL) {
        let w = PANEL.min(last + 1 - start);
        let data = &mut scratch[..n * w];
        data.fill(F::zero());
        let mut p = Panel { data, w };
        forward_units(fd, start, &mut p);
        back_substitute_panel(fd, &mut p);
        for (row, src) in m.entries_mut().chunks_mut(n).zip(p.data.chunks(w)) {
            row[start - 1..start - 1 + w].clone_from_slice(src);
        }
    }
    for (back, col) in seeds.iter().enumerate() {
        for (i, v) in (1..=n).zip(col) {
            m[(i, n - back)] = v.clone();
        }
    }
    m
}

/// Writes `L⁻¹e_j` into panel column `k`, where `j = first + k`. The panel
/// must be zero on entry; entries above `j` stay zero and are skipped.
fn forward_units<F: Field>(fd: &FactorData<F>, first: usize, p: &mut Panel<'_, F>) {
    let n = fd.n;
    for k in 0..p.w {
        let slot = p.at(first + k, k);
        p.data[slot] = F::one();
    }
    let rows: Vec<[F; 3]> = (first + 1..=n - 2)
        .map(|i| {
            let get = |v: &crate::indexed::OffsetVec<F>| v.get(i).cloned().unwrap_or_else(F::zero);
            [get(&fd.lower3), get(&fd.e), fd.f[i].clone()]
        })
        .collect();
    for (i, [l3, e, f]) in (first + 1..=n - 2).zip(&rows) {
        for k in 0..p.w {
            let j = first + k;
            if i <= j {
                break;
            }
            let y = |r: usize| &p.data[p.at(r, k)];
            let mut acc = F::zero();
            if i >= j + 3 {
                acc = acc - l3.clone() * y(i - 3);
            }
            if i >= j + 2 {
                acc = acc - e.clone() * y(i - 2);
            }
            acc = acc - f.clone() * y(i - 1);
            let slot = p.at(i, k);
            p.data[slot] = acc;
        }
    }
    // The two border rows, accumulated in row order for every column at once.
    for (border, row) in [(&fd.k, n - 1), (&fd.h, n)] {
        let mut acc = vec![F::zero(); p.w];
        for (r, coef) in border.iter() {
            let live = (r + 1).saturating_sub(first).min(p.w);
            for (k, a) in acc.iter_mut().enumerate().take(live) {
                *a = a.clone() - coef.clone() * &p.data[p.at(r, k)];
            }
        }
        for (k, a) in acc.into_iter().enumerate() {
            let slot = p.at(row, k);
            p.data[slot] = a;
        }
    }
}

/// Every column of `(L·U)⁻¹`, column 1 first.
pub fn inverse_columns<F: Field>(
    h: &CyclicHeptaMatrix<F>,
    fd: &FactorData<F>,
    strategy: ColumnStrategy,
    parallel_seeds: bool,
) -> Result<Vec<Vec<F>>> {
    let seeds = seed_columns(fd, parallel_seeds);
    match strategy {
        ColumnStrategy::Recurrence => back_columns(h, seeds),
        ColumnStrategy::Substitution => {
            let m = substitution_inverse(fd, seeds);
            Ok((1..=fd.n).map(|j| m.column(j)).collect())
        }
    }
}

/// `(L·U)⁻¹` as a dense matrix.
pub fn inverse_matrix<F: Field>(
    h: &CyclicHeptaMatrix<F>,
    fd: &FactorData<F>,
    strategy: ColumnStrategy,
    parallel_seeds: bool,
) -> Result<DenseMatrix<F>> {
    match strategy {
        ColumnStrategy::Recurrence => DenseMatrix::from_columns(&inverse_columns(h, fd, strategy, parallel_seeds)?),
        ColumnStrategy::Substitution => Ok(substitution_inverse(fd, seed_columns(fd, parallel_seeds))),
    }
}
