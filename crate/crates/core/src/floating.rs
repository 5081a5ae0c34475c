//! binary64 backend. No indeterminate: a pivot below tolerance is an error.

use crate::error::{HeptaError, Result};
use crate::factor::{factorize, DetResult, FactorData, FactorOptions, DEFAULT_TOL};
use crate::hepta::CyclicHeptaMatrix;
use crate::inverse::{inverse_matrix, lu_solve, ColumnStrategy, InverseResult};
use crate::scalar::{Field, Float, Rational};
use crate::solve::{Backend, SolveMethod, SolveReport};

#[derive(Clone, Copy, Debug)]
pub struct FloatOptions {
    pub tol: f64,
    pub parallel_seeds: bool,
    /// Defaults to substitution; the backward recurrence is unstable in
    /// floating point once `n` grows past a few dozen.
    pub strategy: ColumnStrategy,
}

impl Default for FloatOptions {
    fn default() -> Self {
        FloatOptions {
            tol: DEFAULT_TOL,
            parallel_seeds: false,
            strategy: ColumnStrategy::Substitution,
        }
    }
}

pub fn to_float(h: &CyclicHeptaMatrix<Rational>) -> CyclicHeptaMatrix<Float> {
    h.map(Float::from_rational)
}

pub fn factorize_float(h: &CyclicHeptaMatrix<Float>, tol: f64) -> Result<FactorData<Float>> {
    factorize(h, &FactorOptions { tol })
}

pub fn determinant(h: &CyclicHeptaMatrix<Float>, tol: f64) -> Result<DetResult<Float>> {
    let fd = factorize_float(h, tol)?;
    let value = fd.pivot_product();
    Ok(DetResult {
        singular: value.is_zero(),
        pivot_overrides: 0,
        value,
    })
}

pub fn invert(h: &CyclicHeptaMatrix<Float>, opts: &FloatOptions) -> Result<InverseResult<Float>> {
    let fd = factorize_float(h, opts.tol)?;
    Ok(InverseResult {
        inverse: inverse_matrix(h, &fd, opts.strategy, opts.parallel_seeds)?,
        c_substitutions: Vec::new(),
        b_substitutions: Vec::new(),
        pivot_overrides: Vec::new(),
    })
}

fn check_rhs(h: &CyclicHeptaMatrix<Float>, r: &[Float]) -> Result<()> {
    if r.len() != h.n() {
        return Err(HeptaError::DimensionMismatch {
            left: h.n(),
            right: r.len(),
        });
    }
    Ok(())
}

pub fn solve_via_lu(h: &CyclicHeptaMatrix<Float>, r: &[Float], tol: f64) -> Result<SolveReport<Float>> {
    check_rhs(h, r)?;
    let fd = factorize_float(h, tol)?;
    Ok(SolveReport {
        x: lu_solve(&fd, r),
        det: fd.pivot_product(),
        method: SolveMethod::ViaLu,
        backend: Backend::Float,
        pivot_overrides: 0,
        c_substitutions: 0,
    })
}

pub fn solve_via_inverse(
    h: &CyclicHeptaMatrix<Float>,
    r: &[Float],
    opts: &FloatOptions,
) -> Result<SolveReport<Float>> {
    check_rhs(h, r)?;
    let fd = factorize_float(h, opts.tol)?;
    let inv = inverse_matrix(h, &fd, opts.strategy, opts.parallel_seeds)?;
    Ok(SolveReport {
        x: inv.mul_vec(r)?,
        det: fd.pivot_product(),
        method: SolveMethod::ViaInverse,
        backend: Backend::Float,
        pivot_overrides: 0,
        c_substitutions: 0,
    })
}

/// `‖Hx − r‖∞ / (‖H‖∞‖x‖∞ + ‖r‖∞)`.
pub fn relative_residual(h: &CyclicHeptaMatrix<Float>, x: &[Float], r: &[Float]) -> Result<f64> {
    let hx = h.mul_vec(x)?;
    let inf = |v: &[Float]| v.iter().map(|a| a.0.abs()).fold(0.0, f64::max);
    let res = hx.iter().zip(r).map(|(a, b)| (a.0 - b.0).abs()).fold(0.0, f64::max);
    let norm_h = (1..=h.n())
        .map(|i| {
            crate::hepta::Band::ALL
                .into_iter()
                .map(|b| h.entry(b, i).0.abs())
                .sum::<f64>()
        })
        .fold(0.0, f64::max);
    let denom = norm_h * inf(x) + inf(r);
    Ok(if denom == 0.0 { res } else { res / denom })
}
