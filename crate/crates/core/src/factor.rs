//! Pivot-free bordered Doolittle factorization `H = L·U`.
//!
//! `L` is unit lower triangular. Rows `1..=n-2` carry three subdiagonals
//! (`f_i`, `e_i`, `D_i/α_{i-3}`); rows `n-1` and `n` are dense borders `k`
//! and `h`. `U` has the pivots `α_i` on its diagonal, superdiagonals `g_i`,
//! `z_i` and `C_i`, and dense border columns `w` (column `n-1`) and `v`
//! (column `n`). Band entries that would land in the border columns are
//! folded into `w` and `v`, which is why `g`, `z` and the stored `C` stop at
//! `n-3`, `n-4` and `n-5`.
//!
//! Whenever a pivot comes out exactly zero it is replaced by the field's
//! indeterminate `t` (if it has one) and the index is recorded, so the
//! factors describe `H + t·Σ E_ii` over the overridden positions.

use serde::Serialize;

use crate::dense::DenseMatrix;
use crate::error::{HeptaError, Result};
use crate::hepta::{Band, CyclicHeptaMatrix};
use crate::indexed::OffsetVec;
use crate::scalar::{sub_products, Field};

/// Relative pivot tolerance used by the floating backend.
pub const DEFAULT_TOL: f64 = 1e-12;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OverrideKind {
    Pivot,
}

/// A quantity replaced by `t` during factorization.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct Override {
    pub kind: OverrideKind,
    pub index: usize,
}

#[derive(Clone, Copy, Debug)]
pub struct FactorOptions {
    /// Floating backend only: pivots with `|α| < tol·max(1, max|H|)` fail.
    pub tol: f64,
}

impl Default for FactorOptions {
    fn default() -> Self {
        FactorOptions { tol: DEFAULT_TOL }
    }
}

/// Every quantity produced by the recurrences, addressed by the same 1-based
/// indices the formulas use.
#[derive(Clone, PartialEq, Debug)]
pub struct FactorData<F> {
    pub n: usize,
    /// Pivots, `1..=n`.
    pub alpha: OffsetVec<F>,
    /// `L[i, i-1]`, `2..=n-2`.
    pub f: OffsetVec<F>,
    /// `L[i, i-2]`, `3..=n-2`.
    pub e: OffsetVec<F>,
    /// `L[i, i-3] = D_i / α_{i-3}`, `4..=n-2`.
    pub lower3: OffsetVec<F>,
    /// `U[i, i+1]`, `1..=n-3`.
    pub g: OffsetVec<F>,
    /// `U[i, i+2]`, `1..=n-4`.
    pub z: OffsetVec<F>,
    /// `U[i, i+3] = C_i`, `1..=n-5`.
    pub c: OffsetVec<F>,
    /// Row `n-1` of `L`, `1..=n-2`.
    pub k: OffsetVec<F>,
    /// Row `n` of `L`, `1..=n-1`.
    pub h: OffsetVec<F>,
    /// Column `n` of `U` above the diagonal, `1..=n-1`.
    pub v: OffsetVec<F>,
    /// Column `n-1` of `U` above the diagonal, `1..=n-2`.
    pub w: OffsetVec<F>,
    pub overrides: Vec<Override>,
}

impl<F: Field> FactorData<F> {
    /// Product of the pivots, i.e. `det(L·U)`.
    pub fn pivot_product(&self) -> F {
        self.alpha
            .values()
            .iter()
            .fold(F::one(), |acc, a| acc * a)
    }

    pub fn overridden_pivots(&self) -> Vec<usize> {
        self.overrides.iter().map(|o| o.index).collect()
    }

    /// Largest polynomial degree over all stored quantities.
    pub fn max_degree(&self) -> usize {
        [
            &self.alpha,
            &self.f,
            &self.e,
            &self.lower3,
            &self.g,
            &self.z,
            &self.c,
            &self.k,
            &self.h,
            &self.v,
            &self.w,
        ]
        .into_iter()
        .flat_map(|v| v.values())
        .map(Field::degree)
        .max()
        .unwrap_or(0)
    }
}

struct PivotGuard<F> {
    threshold: Option<f64>,
    overrides: Vec<Override>,
    _field: std::marker::PhantomData<F>,
}

impl<F: Field> PivotGuard<F> {
    fn new(h: &CyclicHeptaMatrix<F>, opts: &FactorOptions) -> Self {
        let threshold = F::one()
            .magnitude()
            .map(|_| opts.tol * h.max_magnitude().max(1.0));
        PivotGuard {
            threshold,
            overrides: Vec::new(),
            _field: std::marker::PhantomData,
        }
    }

    /// "If α_i = 0 then α_i = t".
    fn check(&mut self, index: usize, pivot: F) -> Result<F> {
        if pivot.is_zero() {
            return match F::indeterminate() {
                Some(t) => {
                    self.overrides.push(Override {
                        kind: OverrideKind::Pivot,
                        index,
                    });
                    Ok(t)
                }
                None if self.threshold.is_some() => Err(HeptaError::NearSingularPivot { index }),
                None => Err(HeptaError::ZeroPivot { index }),
            };
        }
        if let (Some(limit), Some(m)) = (self.threshold, pivot.magnitude()) {
            if m < limit {
                return Err(HeptaError::NearSingularPivot { index });
            }
        }
        Ok(pivot)
    }
}

/// Runs the full recurrence sweep.
///
/// Over [`crate::scalar::Rational`] a zero pivot is reported as
/// [`HeptaError::ZeroPivot`] so the caller can redo the work over
/// [`crate::scalar::RatFun`]; over `RatFun` it is replaced by `t`; over
/// [`crate::scalar::Float`] a pivot below tolerance is an error.
pub fn factorize<F: Field>(h: &CyclicHeptaMatrix<F>, opts: &FactorOptions) -> Result<FactorData<F>> {
    let n = h.n();
    let zero = F::zero();
    let band = |b: Band, i: usize| h.entry(b, i);
    let (sub3, sub2, sub1, main, sup1, sup2, sup3) = (
        |i| band(Band::Sub3, i),
        |i| band(Band::Sub2, i),
        |i| band(Band::Sub1, i),
        |i| band(Band::Main, i),
        |i| band(Band::Super1, i),
        |i| band(Band::Super2, i),
        |i| band(Band::Super3, i),
    );

    let mut guard = PivotGuard::new(h, opts);
    let mut alpha = OffsetVec::filled(1, n, zero.clone());
    let mut f = OffsetVec::filled(2, n - 2, zero.clone());
    let mut e = OffsetVec::filled(3, n - 2, zero.clone());
    let mut lower3 = OffsetVec::filled(4, n - 2, zero.clone());
    let mut g = OffsetVec::filled(1, n - 3, zero.clone());
    let mut z = OffsetVec::filled(1, n - 4, zero.clone());
    let c = OffsetVec::from_vec(1, (1..=n - 5).map(|i| sup3(i).clone()).collect());
    let mut k = OffsetVec::filled(1, n - 2, zero.clone());
    let mut hh = OffsetVec::filled(1, n - 1, zero.clone());
    let mut v = OffsetVec::filled(1, n - 1, zero.clone());
    let mut w = OffsetVec::filled(1, n - 2, zero.clone());

    // Leading 3x3 block.
    alpha[1] = guard.check(1, main(1).clone())?;
    g[1] = sup1(1).clone();
    z[1] = sup2(1).clone();
    f[2] = sub1(2).clone() / &alpha[1];
    e[3] = sub2(3).clone() / &alpha[1];
    alpha[2] = guard.check(2, main(2).clone() - f[2].clone() * &g[1])?;
    g[2] = sup1(2).clone() - f[2].clone() * &z[1];
    f[3] = (sub1(3).clone() - e[3].clone() * &g[1]) / &alpha[2];
    alpha[3] = guard.check(3, sub_products(main(3).clone(), [(&e[3], &z[1]), (&f[3], &g[2])]))?;

    // Main sweep over rows 4..=n-2. Each step finishes the U entries of the
    // two rows above before forming the pivot.
    for i in 4..=n - 2 {
        lower3[i] = sub3(i).clone() / &alpha[i - 3];
        e[i] = (sub2(i).clone() - lower3[i].clone() * &g[i - 3]) / &alpha[i - 2];
        f[i] = sub_products(sub1(i).clone(), [(&lower3[i], &z[i - 3]), (&e[i], &g[i - 2])])
            / &alpha[i - 1];
        z[i - 2] = sup2(i - 2).clone() - f[i - 2].clone() * &c[i - 3];
        g[i - 1] = sub_products(sup1(i - 1).clone(), [(&f[i - 1], &z[i - 2]), (&e[i - 1], &c[i - 3])]);
        let pivot = sub_products(
            main(i).clone(),
            [(&lower3[i], &c[i - 3]), (&e[i], &z[i - 2]), (&f[i], &g[i - 1])],
        );
        alpha[i] = guard.check(i, pivot)?;
    }

    // Border row n-1 of L: k_j = (H[n-1, j] - k_{j-3}C_{j-3} - k_{j-2}z_{j-2} - k_{j-1}g_{j-1}) / α_j.
    // Sources: A_{n-1} at j = 1 and D_{n-1}, B_{n-1}, b_{n-1} at j = n-4, n-3, n-2.
    let row_n1 = |j: usize| -> F {
        if j == 1 {
            sup2(n - 1).clone()
        } else if j == n - 4 {
            sub3(n - 1).clone()
        } else if j == n - 3 {
            sub2(n - 1).clone()
        } else if j == n - 2 {
            sub1(n - 1).clone()
        } else {
            F::zero()
        }
    };
    // Border row n of L: sources a_n, A_n at j = 1, 2 and D_n, B_n at j = n-3, n-2.
    let row_n = |j: usize| -> F {
        if j == 1 {
            sup1(n).clone()
        } else if j == 2 {
            sup2(n).clone()
        } else if j == n - 3 {
            sub3(n).clone()
        } else if j == n - 2 {
            sub2(n).clone()
        } else {
            F::zero()
        }
    };
    // Column n-1 of U: sources B_1 and C_{n-4}, A_{n-3}, a_{n-2}.
    let col_n1 = |i: usize| -> F {
        if i == 1 {
            sub2(1).clone()
        } else if i == n - 4 {
            sup3(n - 4).clone()
        } else if i == n - 3 {
            sup2(n - 3).clone()
        } else if i == n - 2 {
            sup1(n - 2).clone()
        } else {
            F::zero()
        }
    };
    // Column n of U: sources b_1, B_2 and C_{n-3}, A_{n-2}.
    let col_n = |i: usize| -> F {
        if i == 1 {
            sub1(1).clone()
        } else if i == 2 {
            sub2(2).clone()
        } else if i == n - 3 {
            sup3(n - 3).clone()
        } else if i == n - 2 {
            sup2(n - 2).clone()
        } else {
            F::zero()
        }
    };

    // Shared shape of the two L border rows. Band entries of U above row j in
    // column j are C_{j-3}, z_{j-2}, g_{j-1}.
    let border_row = |src: F, j: usize, row: &OffsetVec<F>| -> F {
        let mut acc = src;
        if j > 3 {
            acc = acc - row[j - 3].clone() * &c[j - 3];
        }
        if j > 2 {
            acc = acc - row[j - 2].clone() * &z[j - 2];
        }
        if j > 1 {
            acc = acc - row[j - 1].clone() * &g[j - 1];
        }
        acc / &alpha[j]
    };
    // Shared shape of the two U border columns: L entries left of the
    // diagonal in row i are lower3_i, e_i, f_i.
    let border_col = |src: F, i: usize, col: &OffsetVec<F>| -> F {
        let mut acc = src;
        if i > 3 {
            acc = acc - lower3[i].clone() * &col[i - 3];
        }
        if i > 2 {
            acc = acc - e[i].clone() * &col[i - 2];
        }
        if i > 1 {
            acc = acc - f[i].clone() * &col[i - 1];
        }
        acc
    };

    // k and w over 1..=n-5, then h and v over 1..=n-4, then the closures
    // near the corner where the sources are nonzero.
    for j in 1..=n - 5 {
        k[j] = border_row(row_n1(j), j, &k);
        w[j] = border_col(col_n1(j), j, &w);
    }
    for j in 1..=n - 4 {
        hh[j] = border_row(row_n(j), j, &hh);
        v[j] = border_col(col_n(j), j, &v);
    }
    for j in n - 4..=n - 2 {
        k[j] = border_row(row_n1(j), j, &k);
        w[j] = border_col(col_n1(j), j, &w);
    }
    for j in n - 3..=n - 2 {
        hh[j] = border_row(row_n(j), j, &hh);
        v[j] = border_col(col_n(j), j, &v);
    }

    // Trailing 2x2 block.
    let wk = w.values().iter().zip(k.values());
    alpha[n - 1] = guard.check(n - 1, sub_products(main(n - 1).clone(), wk))?;
    v[n - 1] = sub_products(sup1(n - 1).clone(), k.values().iter().zip(v.values()));
    hh[n - 1] = sub_products(sub1(n).clone(), hh.values().iter().zip(w.values())) / &alpha[n - 1];
    let vh = v.values().iter().zip(hh.values());
    alpha[n] = guard.check(n, sub_products(main(n).clone(), vh))?;

    Ok(FactorData {
        n,
        alpha,
        f,
        e,
        lower3,
        g,
        z,
        c,
        k,
        h: hh,
        v,
        w,
        overrides: guard.overrides,
    })
}

impl<F: Field> FactorData<F> {
    /// Dense unit lower factor.
    pub fn lower(&self) -> DenseMatrix<F> {
        let n = self.n;
        let mut l = DenseMatrix::identity(n);
        for (i, x) in self.f.iter() {
            l[(i, i - 1)] = x.clone();
        }
        for (i, x) in self.e.iter() {
            l[(i, i - 2)] = x.clone();
        }
        for (i, x) in self.lower3.iter() {
            l[(i, i - 3)] = x.clone();
        }
        for (j, x) in self.k.iter() {
            l[(n - 1, j)] = x.clone();
        }
        for (j, x) in self.h.iter() {
            l[(n, j)] = x.clone();
        }
        l
    }

    /// Dense upper factor.
    pub fn upper(&self) -> DenseMatrix<F> {
        let n = self.n;
        let mut u = DenseMatrix::zeros(n);
        for (i, x) in self.alpha.iter() {
            u[(i, i)] = x.clone();
        }
        for (i, x) in self.g.iter() {
            u[(i, i + 1)] = x.clone();
        }
        for (i, x) in self.z.iter() {
            u[(i, i + 2)] = x.clone();
        }
        for (i, x) in self.c.iter() {
            u[(i, i + 3)] = x.clone();
        }
        for (i, x) in self.w.iter() {
            u[(i, n - 1)] = x.clone();
        }
        for (i, x) in self.v.iter() {
            u[(i, n)] = x.clone();
        }
        u
    }
}

/// Dense `(L, U)` from the recurrence outputs.
pub fn materialize_lu<F: Field>(fd: &FactorData<F>) -> (DenseMatrix<F>, DenseMatrix<F>) {
    (fd.lower(), fd.upper())
}

/// Determinant with pivot-override bookkeeping.
#[derive(Clone, PartialEq, Debug)]
pub struct DetResult<F> {
    pub value: F,
    pub pivot_overrides: usize,
    pub singular: bool,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Float, RatFun, Rational};

    fn q(v: i64) -> Rational {
        Rational::from(v)
    }

    #[test]
    fn identity_factors_trivially() {
        let h = CyclicHeptaMatrix::<Rational>::identity(10).unwrap();
        let fd = factorize(&h, &FactorOptions::default()).unwrap();
        assert!(fd.alpha.values().iter().all(|a| *a == q(1)));
        for vec in [&fd.f, &fd.e, &fd.g, &fd.z, &fd.k, &fd.h, &fd.v, &fd.w] {
            assert!(vec.values().iter().all(Field::is_zero));
        }
        assert!(fd.overrides.is_empty());
        let (l, u) = materialize_lu(&fd);
        assert_eq!(l, DenseMatrix::identity(10));
        assert_eq!(u, DenseMatrix::identity(10));
    }

    #[test]
    fn index_ranges() {
        let h = CyclicHeptaMatrix::<Rational>::identity(12).unwrap();
        let fd = factorize(&h, &FactorOptions::default()).unwrap();
        assert_eq!(fd.alpha.range(), 1..=12);
        assert_eq!(fd.f.range(), 2..=10);
        assert_eq!(fd.e.range(), 3..=10);
        assert_eq!(fd.g.range(), 1..=9);
        assert_eq!(fd.z.range(), 1..=8);
        assert_eq!(fd.k.range(), 1..=10);
        assert_eq!(fd.h.range(), 1..=11);
        assert_eq!(fd.v.range(), 1..=11);
        assert_eq!(fd.w.range(), 1..=10);
        assert!(fd.f.get(11).is_none());
        assert!(fd.z.get(9).is_none());
    }

    #[test]
    fn zero_pivot_rational_reports_position() {
        let h = CyclicHeptaMatrix::<Rational>::identity(9)
            .unwrap()
            .with_entry(Band::Main, 1, q(0))
            .unwrap();
        assert_eq!(
            factorize(&h, &FactorOptions::default()),
            Err(HeptaError::ZeroPivot { index: 1 })
        );
    }

    #[test]
    fn zero_pivot_symbolic_becomes_t() {
        let h = CyclicHeptaMatrix::<Rational>::identity(9)
            .unwrap()
            .with_entry(Band::Main, 1, q(0))
            .unwrap()
            .map(RatFun::from_rational);
        let fd = factorize(&h, &FactorOptions::default()).unwrap();
        assert_eq!(fd.alpha[1], RatFun::t());
        assert_eq!(
            fd.overrides,
            vec![Override {
                kind: OverrideKind::Pivot,
                index: 1
            }]
        );
    }

    #[test]
    fn float_tolerance() {
        let h = CyclicHeptaMatrix::<Float>::identity(9)
            .unwrap()
            .with_entry(Band::Main, 4, Float(1e-14))
            .unwrap();
        assert_eq!(
            factorize(&h, &FactorOptions::default()),
            Err(HeptaError::NearSingularPivot { index: 4 })
        );
        let loose = FactorOptions { tol: 1e-16 };
        assert!(factorize(&h, &loose).is_ok());
    }
}
