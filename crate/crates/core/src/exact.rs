//! Exact backend: rationals, promoted to rational functions in `t` when a
//! zero pivot or a zero band divisor shows up.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::dense::DenseMatrix;
use crate::error::{HeptaError, Result};
use crate::factor::{factorize, DetResult, FactorData, FactorOptions};
use crate::hepta::{Band, CyclicHeptaMatrix};
use crate::inverse::{inverse_columns, seed_columns, ColumnStrategy, InverseResult};
use crate::scalar::{Field, Poly, RatFun, Rational};
use crate::solve::{Backend, SolveMethod, SolveReport};

pub const DEFAULT_DEGREE_CAP: usize = 64;

#[derive(Clone, Copy, Debug)]
pub struct ExactOptions {
    pub parallel_seeds: bool,
    /// Also replace zero `B_i`, `i ≥ 6`, by `t`. Off by default: nothing
    /// divides by `B_i`.
    pub apply_b_substitution: bool,
    /// Largest polynomial degree tolerated in any intermediate value.
    pub degree_cap: usize,
}

impl Default for ExactOptions {
    fn default() -> Self {
        ExactOptions {
            parallel_seeds: false,
            apply_b_substitution: false,
            degree_cap: DEFAULT_DEGREE_CAP,
        }
    }
}

/// Factorization over whichever field turned out to be needed.
#[derive(Clone, PartialEq, Debug)]
pub enum ExactFactor {
    Rational(FactorData<Rational>),
    Symbolic(FactorData<RatFun>),
}

impl ExactFactor {
    pub fn overridden_pivots(&self) -> Vec<usize> {
        match self {
            ExactFactor::Rational(fd) => fd.overridden_pivots(),
            ExactFactor::Symbolic(fd) => fd.overridden_pivots(),
        }
    }

    /// `det` at `t = 0`.
    pub fn determinant(&self) -> Result<Rational> {
        match self {
            ExactFactor::Rational(fd) => Ok(fd.pivot_product()),
            ExactFactor::Symbolic(fd) => fd.pivot_product().eval_at_zero(),
        }
    }
}

fn check_degree(degree: usize, cap: usize) -> Result<()> {
    if degree > cap {
        return Err(HeptaError::DegreeCap { degree, cap });
    }
    Ok(())
}

fn factorize_symbolic(h: &CyclicHeptaMatrix<RatFun>, cap: usize) -> Result<FactorData<RatFun>> {
    let fd = factorize(h, &FactorOptions::default())?;
    check_degree(fd.max_degree(), cap)?;
    Ok(fd)
}

/// Runs over plain rationals and redoes the sweep over `RatFun` only if a
/// pivot vanishes.
pub fn factorize_exact(h: &CyclicHeptaMatrix<Rational>, degree_cap: usize) -> Result<ExactFactor> {
    match factorize(h, &FactorOptions::default()) {
        Ok(fd) => Ok(ExactFactor::Rational(fd)),
        Err(HeptaError::ZeroPivot { .. }) => Ok(ExactFactor::Symbolic(factorize_symbolic(
            &h.map(RatFun::from_rational),
            degree_cap,
        )?)),
        Err(e) => Err(e),
    }
}

/// Determinant with zero pivots replaced by `t` and the product evaluated at
/// `t = 0`.
pub fn determinant(h: &CyclicHeptaMatrix<Rational>) -> Result<DetResult<Rational>> {
    let factor = factorize_exact(h, DEFAULT_DEGREE_CAP)?;
    let value = factor.determinant()?;
    Ok(DetResult {
        singular: value.is_zero(),
        pivot_overrides: factor.overridden_pivots().len(),
        value,
    })
}

/// Band positions that must be perturbed to `t` before inversion.
pub fn substitution_sites(h: &CyclicHeptaMatrix<Rational>, apply_b: bool) -> (Vec<usize>, Vec<usize>) {
    let n = h.n();
    let c_sites = (1..=n - 5)
        .filter(|&i| h.entry(Band::Super3, i).is_zero())
        .collect();
    let b_sites = if apply_b {
        (6..=n)
            .filter(|&i| h.entry(Band::Sub2, i).is_zero())
            .collect()
    } else {
        Vec::new()
    };
    (c_sites, b_sites)
}

/// `H(t)`: the symbolic copy with the given entries replaced by `t`.
pub fn perturb(
    h: &CyclicHeptaMatrix<Rational>,
    c_sites: &[usize],
    b_sites: &[usize],
) -> Result<CyclicHeptaMatrix<RatFun>> {
    let mut hs = h.map(RatFun::from_rational);
    for &i in c_sites {
        hs = hs.with_entry(Band::Super3, i, RatFun::t())?;
    }
    for &i in b_sites {
        hs = hs.with_entry(Band::Sub2, i, RatFun::t())?;
    }
    Ok(hs)
}

/// Exact inverse by the seed-column / backward-recurrence scheme.
///
/// Zero `C_i` (and optionally zero `B_i`) are replaced by `t`, the whole
/// pipeline runs on the perturbed matrix, and every entry is evaluated at
/// `t = 0` at the end. Singular matrices are refused.
pub fn invert(h: &CyclicHeptaMatrix<Rational>, opts: &ExactOptions) -> Result<InverseResult<Rational>> {
    let (c_sites, b_sites) = substitution_sites(h, opts.apply_b_substitution);
    let symbolic = !c_sites.is_empty() || !b_sites.is_empty();

    let factor = if symbolic {
        ExactFactor::Symbolic(factorize_symbolic(&perturb(h, &c_sites, &b_sites)?, opts.degree_cap)?)
    } else {
        factorize_exact(h, opts.degree_cap)?
    };
    if factor.determinant()?.is_zero() {
        return Err(HeptaError::Singular);
    }

    let pivot_overrides = factor.overridden_pivots();
    let inverse = match factor {
        ExactFactor::Rational(fd) if is_integral(h) => {
            let det = fd.pivot_product();
            let seeds = seed_columns(&fd, opts.parallel_seeds);
            integer_inverse(h, seeds, &det)?
        }
        ExactFactor::Rational(fd) => {
            let cols = inverse_columns(h, &fd, ColumnStrategy::Recurrence, opts.parallel_seeds)?;
            DenseMatrix::from_columns(&cols)?
        }
        ExactFactor::Symbolic(fd) => {
            let hs = if symbolic {
                perturb(h, &c_sites, &b_sites)?
            } else {
                h.map(RatFun::from_rational)
            };
            symbolic_inverse(&hs, &fd, opts)?
        }
    };
    Ok(InverseResult {
        inverse,
        c_substitutions: c_sites,
        b_substitutions: b_sites,
        pivot_overrides,
    })
}

fn is_integral(h: &CyclicHeptaMatrix<Rational>) -> bool {
    h.bands().iter().flatten().all(Rational::is_integer)
}

/// Exact ring the adjugate recurrence runs in: integers for an integral
/// `H`, polynomials in `t` for the perturbed one.
trait AdjugateRing: Clone + Sized {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn sub_mul(&mut self, a: &Self, b: &Self);
    /// `None` when the division leaves a remainder.
    fn exact_div(&self, d: &Self) -> Option<Self>;
}

impl AdjugateRing for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn sub_mul(&mut self, a: &Self, b: &Self) {
        *self -= a * b;
    }
    fn exact_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d);
        Zero::is_zero(&r).then_some(q)
    }
}

impl AdjugateRing for Poly {
    fn zero() -> Self {
        Poly::zero()
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn sub_mul(&mut self, a: &Self, b: &Self) {
        *self = self.sub(&a.mul(b));
    }
    fn exact_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d).ok()?;
        Poly::is_zero(&r).then_some(q)
    }
}

/// Backward column recurrence on the adjugate `det·H⁻¹`, whose entries lie
/// in the same ring as those of `H`. Each step is a handful of products and
/// one exact division by `C_j`, with no gcd anywhere.
///
/// `seeds` are adjugate columns `n, n−1, …, n−4`; returns all `n` columns,
/// column 1 first.
fn adjugate_columns<R: AdjugateRing>(
    n: usize,
    entry: impl Fn(Band, usize) -> R,
    det: &R,
    seeds: [Vec<R>; 5],
) -> Result<Vec<Vec<R>>> {
    let mut adj: Vec<Vec<R>> = vec![Vec::new(); n];
    for (m, col) in seeds.into_iter().enumerate() {
        adj[n - 1 - m] = col;
    }
    for j in (1..=n - 5).rev() {
        let divisor = entry(Band::Super3, j);
        if divisor.is_zero() {
            return Err(HeptaError::ZeroBandDivisor { index: j });
        }
        let mut terms = vec![
            (entry(Band::Super2, j + 1), j),
            (entry(Band::Super1, j + 2), j + 1),
            (entry(Band::Main, j + 3), j + 2),
            (entry(Band::Sub1, j + 4), j + 3),
            (entry(Band::Sub2, j + 5), j + 4),
        ];
        if j + 6 <= n {
            terms.push((entry(Band::Sub3, j + 6), j + 5));
        }
        terms.retain(|(c, _)| !c.is_zero());
        let col = (1..=n)
            .map(|i| {
                let mut acc = if i == j + 3 { det.clone() } else { R::zero() };
                for (coef, k) in &terms {
                    acc.sub_mul(coef, &adj[*k][i - 1]);
                }
                acc.exact_div(&divisor).ok_or_else(|| {
                    HeptaError::Contract(format!("adjugate column {j} not exact"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        adj[j - 1] = col;
    }
    Ok(adj)
}

fn integer_inverse(
    h: &CyclicHeptaMatrix<Rational>,
    seeds: [Vec<Rational>; 5],
    det: &Rational,
) -> Result<DenseMatrix<Rational>> {
    let det_int = det.numer().clone();
    let seeds = seeds.map(|col| {
        col.into_iter()
            .map(|s| {
                let scaled = s * det;
                debug_assert!(scaled.is_integer());
                scaled.numer().clone()
            })
            .collect()
    });
    let adj = adjugate_columns(h.n(), |b, i| h.entry(b, i).numer().clone(), &det_int, seeds)?;
    let cols: Vec<Vec<Rational>> = adj
        .into_iter()
        .map(|c| {
            c.into_iter()
                .map(|a| Rational::new(a, det_int.clone()))
                .collect::<Result<_>>()
        })
        .collect::<Result<_>>()?;
    DenseMatrix::from_columns(&cols)
}

/// The polynomial matrix whose bordered factors `fd` are: `hs` plus `t` at
/// every overridden pivot.
fn factored_matrix(hs: &CyclicHeptaMatrix<RatFun>, fd: &FactorData<RatFun>) -> Result<CyclicHeptaMatrix<RatFun>> {
    let mut out = hs.clone();
    for i in fd.overridden_pivots() {
        let d = out.entry(Band::Main, i).clone() + RatFun::t();
        out = out.with_entry(Band::Main, i, d)?;
    }
    Ok(out)
}

fn polynomial(r: &RatFun) -> Result<Poly> {
    if r.den() != &Poly::one() {
        return Err(HeptaError::Contract(format!("expected a polynomial, got {r}")));
    }
    Ok(r.num().clone())
}

/// Inverse of `H(0)` from the factors of `H(t)`: adjugate recurrence over
/// `Q[t]`, then every entry evaluated at `t = 0` and divided by `det(0)`.
fn symbolic_inverse(
    hs: &CyclicHeptaMatrix<RatFun>,
    fd: &FactorData<RatFun>,
    opts: &ExactOptions,
) -> Result<DenseMatrix<Rational>> {
    let ht = factored_matrix(hs, fd)?;
    let det = fd.pivot_product();
    let det_poly = polynomial(&det)?;
    let seeds = seed_columns(fd, opts.parallel_seeds);
    let seeds = seeds
        .into_iter()
        .map(|col| col.iter().map(|s| polynomial(&(s.clone() * &det))).collect())
        .collect::<Result<Vec<Vec<Poly>>>>()?;
    let seeds: [Vec<Poly>; 5] = seeds.try_into().expect("five seed columns");
    let adj = adjugate_columns(hs.n(), |b, i| polynomial(ht.entry(b, i)).expect("polynomial band"), &det_poly, seeds)?;
    let degree = adj.iter().flatten().filter_map(Poly::degree).max().unwrap_or(0);
    check_degree(degree, opts.degree_cap)?;
    let det0 = det_poly.at_zero();
    if det0.is_zero() {
        return Err(HeptaError::Singular);
    }
    let cols: Vec<Vec<Rational>> = adj
        .iter()
        .map(|c| c.iter().map(|a| Rational::from_big(a.at_zero() / &det0)).collect())
        .collect();
    DenseMatrix::from_columns(&cols)
}

fn check_rhs(h: &CyclicHeptaMatrix<Rational>, r: &[Rational]) -> Result<()> {
    if r.len() != h.n() {
        return Err(HeptaError::DimensionMismatch {
            left: h.n(),
            right: r.len(),
        });
    }
    Ok(())
}

/// `x = H⁻¹·r` through [`invert`].
pub fn solve_via_inverse(
    h: &CyclicHeptaMatrix<Rational>,
    r: &[Rational],
    opts: &ExactOptions,
) -> Result<SolveReport<Rational>> {
    check_rhs(h, r)?;
    let inv = invert(h, opts)?;
    let det = determinant(h)?.value;
    Ok(SolveReport {
        x: inv.inverse.mul_vec(r)?,
        det,
        method: SolveMethod::ViaInverse,
        backend: Backend::Exact,
        pivot_overrides: inv.pivot_overrides.len(),
        c_substitutions: inv.c_substitutions.len(),
    })
}

/// Forward/backward substitution through the bordered factors, O(n).
pub fn solve_via_lu(
    h: &CyclicHeptaMatrix<Rational>,
    r: &[Rational],
    opts: &ExactOptions,
) -> Result<SolveReport<Rational>> {
    check_rhs(h, r)?;
    let factor = factorize_exact(h, opts.degree_cap)?;
    let det = factor.determinant()?;
    if det.is_zero() {
        return Err(HeptaError::Singular);
    }
    let x = match &factor {
        ExactFactor::Rational(fd) => crate::inverse::lu_solve(fd, r),
        ExactFactor::Symbolic(fd) => {
            let rs: Vec<RatFun> = r.iter().map(RatFun::from_rational).collect();
            crate::inverse::lu_solve(fd, &rs)
                .iter()
                .map(RatFun::eval_at_zero)
                .collect::<Result<_>>()?
        }
    };
    Ok(SolveReport {
        x,
        det,
        method: SolveMethod::ViaLu,
        backend: Backend::Exact,
        pivot_overrides: factor.overridden_pivots().len(),
        c_substitutions: 0,
    })
}
