//! Band storage for cyclic heptadiagonal matrices.
//!
//! Row `i` holds seven entries, one per band, at columns `i-3 ..= i+3`
//! taken cyclically modulo `n`:
//!
//! ```text
//! H[i, i-3] = D_i   H[i, i-2] = B_i   H[i, i-1] = b_i   H[i, i] = d_i
//! H[i, i+1] = a_i   H[i, i+2] = A_i   H[i, i+3] = C_i
//! ```
//!
//! The wrapped positions `D_1, D_2, D_3` and `C_{n-2}, C_{n-1}, C_n` are
//! stored but must be zero. All public indices are 1-based.

use std::fmt;

use crate::dense::DenseMatrix;
use crate::error::{HeptaError, Result};
use crate::scalar::Field;

/// Smallest supported order.
pub const MIN_ORDER: usize = 8;

/// One of the seven diagonals, named by its offset from the main diagonal.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Band {
    /// `D`, offset -3
    Sub3,
    /// `B`, offset -2
    Sub2,
    /// `b`, offset -1
    Sub1,
    /// `d`, the diagonal
    Main,
    /// `a`, offset +1
    Super1,
    /// `A`, offset +2
    Super2,
    /// `C`, offset +3
    Super3,
}

impl Band {
    pub const ALL: [Band; 7] = [
        Band::Sub3,
        Band::Sub2,
        Band::Sub1,
        Band::Main,
        Band::Super1,
        Band::Super2,
        Band::Super3,
    ];

    pub fn offset(self) -> isize {
        self as isize - 3
    }

    pub fn from_offset(offset: isize) -> Option<Band> {
        (-3..=3)
            .contains(&offset)
            .then(|| Band::ALL[(offset + 3) as usize])
    }

    /// Single-letter name used in matrix files.
    pub fn symbol(self) -> &'static str {
        match self {
            Band::Sub3 => "D",
            Band::Sub2 => "B",
            Band::Sub1 => "b",
            Band::Main => "d",
            Band::Super1 => "a",
            Band::Super2 => "A",
            Band::Super3 => "C",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Band> {
        Band::ALL.into_iter().find(|b| b.symbol() == s)
    }

    /// Rows whose entry in this band wraps onto a forced-zero position.
    fn forced_zero(self, n: usize) -> std::ops::RangeInclusive<usize> {
        match self {
            Band::Sub3 => 1..=3,
            Band::Super3 => n - 2..=n,
            _ => std::ops::RangeInclusive::new(1, 0),
        }
    }
}

impl fmt::Display for Band {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// Cyclic heptadiagonal matrix in seven-band form.
#[derive(Clone, PartialEq, Debug)]
pub struct CyclicHeptaMatrix<F> {
    n: usize,
    bands: [Vec<F>; 7],
}

impl<F: Field> CyclicHeptaMatrix<F> {
    /// Validates order, band lengths and the forced-zero wrap positions.
    ///
    /// `bands` are given in [`Band::ALL`] order (`D, B, b, d, a, A, C`), each
    /// of length `n` with element `k-1` holding index `k`.
    pub fn build(n: usize, bands: [Vec<F>; 7]) -> Result<Self> {
        if n < MIN_ORDER {
            return Err(HeptaError::OrderTooSmall { n });
        }
        for (band, values) in Band::ALL.into_iter().zip(&bands) {
            if values.len() != n {
                return Err(HeptaError::BandLength {
                    band: band.symbol(),
                    len: values.len(),
                    n,
                });
            }
            if let Some(index) = band.forced_zero(n).find(|&i| !values[i - 1].is_zero()) {
                return Err(HeptaError::BandWrapViolation {
                    band: band.symbol(),
                    index,
                });
            }
        }
        Ok(CyclicHeptaMatrix { n, bands })
    }

    /// Diagonal matrix with every `d_i = 1`.
    pub fn identity(n: usize) -> Result<Self> {
        let zero = vec![F::zero(); n];
        let one = vec![F::one(); n];
        Self::build(
            n,
            [
                zero.clone(),
                zero.clone(),
                zero.clone(),
                one,
                zero.clone(),
                zero.clone(),
                zero,
            ],
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Band values, element `k-1` holding index `k`.
    pub fn band(&self, band: Band) -> &[F] {
        &self.bands[band as usize]
    }

    pub fn bands(&self) -> &[Vec<F>; 7] {
        &self.bands
    }

    /// Band entry at 1-based row `i`.
    #[inline]
    pub fn entry(&self, band: Band, i: usize) -> &F {
        &self.bands[band as usize][i - 1]
    }

    /// Returns a copy with one band entry replaced, re-validating wrap zeros.
    pub fn with_entry(&self, band: Band, i: usize, value: F) -> Result<Self> {
        if !(1..=self.n).contains(&i) {
            return Err(HeptaError::IndexOutOfRange { i, j: i, n: self.n });
        }
        let mut bands = self.bands.clone();
        bands[band as usize][i - 1] = value;
        Self::build(self.n, bands)
    }

    /// Which band, if any, position `(i, j)` falls on.
    pub fn band_at(&self, i: usize, j: usize) -> Option<Band> {
        let n = self.n;
        let r = (j + n - i) % n;
        let offset = if r <= 3 {
            r as isize
        } else if r >= n - 3 {
            r as isize - n as isize
        } else {
            return None;
        };
        Band::from_offset(offset)
    }

    pub fn get(&self, i: usize, j: usize) -> Result<F> {
        let n = self.n;
        if !(1..=n).contains(&i) || !(1..=n).contains(&j) {
            return Err(HeptaError::IndexOutOfRange { i, j, n });
        }
        Ok(self
            .band_at(i, j)
            .map_or_else(F::zero, |band| self.entry(band, i).clone()))
    }

    pub fn to_dense(&self) -> DenseMatrix<F> {
        let n = self.n;
        let mut m = DenseMatrix::zeros(n);
        for band in Band::ALL {
            let off = band.offset();
            for i in 1..=n {
                let v = self.entry(band, i);
                if !v.is_zero() {
                    let j = ((i as isize - 1 + off).rem_euclid(n as isize)) as usize + 1;
                    m[(i, j)] = v.clone();
                }
            }
        }
        m
    }

    /// Extracts the bands; any nonzero outside the allowed pattern (including
    /// the forced-zero wrap positions) is a pattern violation.
    pub fn from_dense(m: &DenseMatrix<F>) -> Result<Self> {
        let n = m.n();
        if n < MIN_ORDER {
            return Err(HeptaError::OrderTooSmall { n });
        }
        let shape = Self::identity(n)?;
        let mut bands: [Vec<F>; 7] = std::array::from_fn(|_| vec![F::zero(); n]);
        for i in 1..=n {
            for j in 1..=n {
                let v = &m[(i, j)];
                if v.is_zero() {
                    continue;
                }
                match shape.band_at(i, j) {
                    Some(band) if band.forced_zero(n).all(|k| k != i) => {
                        bands[band as usize][i - 1] = v.clone();
                    }
                    _ => return Err(HeptaError::PatternViolation { i, j }),
                }
            }
        }
        Self::build(n, bands)
    }

    pub fn map<G: Field>(&self, mut f: impl FnMut(&F) -> G) -> CyclicHeptaMatrix<G> {
        CyclicHeptaMatrix {
            n: self.n,
            bands: std::array::from_fn(|b| self.bands[b].iter().map(&mut f).collect()),
        }
    }

    /// Largest absolute entry, for the floating pivot tolerance.
    pub fn max_magnitude(&self) -> f64 {
        self.bands
            .iter()
            .flatten()
            .filter_map(Field::magnitude)
            .fold(0.0, f64::max)
    }

    /// `H·x` in O(n) using the band structure.
    pub fn mul_vec(&self, x: &[F]) -> Result<Vec<F>> {
        let n = self.n;
        if x.len() != n {
            return Err(HeptaError::DimensionMismatch {
                left: n,
                right: x.len(),
            });
        }
        Ok((1..=n)
            .map(|i| {
                Band::ALL.into_iter().fold(F::zero(), |acc, band| {
                    let v = self.entry(band, i);
                    if v.is_zero() {
                        return acc;
                    }
                    let j = ((i as isize - 1 + band.offset()).rem_euclid(n as isize)) as usize;
                    acc + v.clone() * &x[j]
                })
            })
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn q(v: i64) -> Rational {
        Rational::from(v)
    }

    fn zeros(n: usize) -> Vec<Rational> {
        vec![q(0); n]
    }

    #[test]
    fn order_below_eight_rejected() {
        let bands: [Vec<Rational>; 7] = std::array::from_fn(|_| zeros(7));
        assert_eq!(
            CyclicHeptaMatrix::build(7, bands),
            Err(HeptaError::OrderTooSmall { n: 7 })
        );
    }

    #[test]
    fn wrap_violation_names_index() {
        let mut bands: [Vec<Rational>; 7] = std::array::from_fn(|_| zeros(10));
        bands[Band::Super3 as usize][8] = q(1);
        assert_eq!(
            CyclicHeptaMatrix::build(10, bands),
            Err(HeptaError::BandWrapViolation { band: "C", index: 9 })
        );
        let mut bands: [Vec<Rational>; 7] = std::array::from_fn(|_| zeros(10));
        bands[Band::Sub3 as usize][1] = q(1);
        assert_eq!(
            CyclicHeptaMatrix::build(10, bands),
            Err(HeptaError::BandWrapViolation { band: "D", index: 2 })
        );
    }

    #[test]
    fn band_lengths_checked() {
        let mut bands: [Vec<Rational>; 7] = std::array::from_fn(|_| zeros(9));
        bands[2].pop();
        assert!(matches!(
            CyclicHeptaMatrix::build(9, bands),
            Err(HeptaError::BandLength { band: "b", .. })
        ));
    }

    #[test]
    fn identity_dense_and_access() {
        let h = CyclicHeptaMatrix::<Rational>::identity(10).unwrap();
        assert_eq!(h.to_dense(), DenseMatrix::identity(10));
        assert_eq!(h.get(3, 3).unwrap(), q(1));
        assert_eq!(h.get(3, 4).unwrap(), q(0));
        assert!(h.get(0, 1).is_err());
        assert!(h.get(1, 11).is_err());
    }

    #[test]
    fn pattern_violation_off_band() {
        let mut m = DenseMatrix::<Rational>::identity(10);
        m[(1, 5)] = q(1);
        assert_eq!(
            CyclicHeptaMatrix::from_dense(&m),
            Err(HeptaError::PatternViolation { i: 1, j: 5 })
        );
        // (1, 8) is the forced-zero D_1 position.
        let mut m = DenseMatrix::<Rational>::identity(10);
        m[(1, 8)] = q(1);
        assert_eq!(
            CyclicHeptaMatrix::from_dense(&m),
            Err(HeptaError::PatternViolation { i: 1, j: 8 })
        );
    }

    #[test]
    fn band_offsets_and_symbols() {
        for band in Band::ALL {
            assert_eq!(Band::from_offset(band.offset()), Some(band));
            assert_eq!(Band::from_symbol(band.symbol()), Some(band));
        }
        assert_eq!(Band::from_offset(4), None);
    }
}
