use std::ops::{Index, IndexMut};

use crate::error::{HeptaError, Result};
use crate::scalar::Field;

/// Square matrix stored row-major. Indexing is 1-based: `m[(i, j)]`.
#[derive(Clone, PartialEq, Debug)]
pub struct DenseMatrix<F> {
    n: usize,
    entries: Vec<F>,
}

impl<F: Field> DenseMatrix<F> {
    pub fn zeros(n: usize) -> Self {
        DenseMatrix {
            n,
            entries: vec![F::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 1..=n {
            m[(i, i)] = F::one();
        }
        m
    }

    /// Builds from `n` rows of `n` entries each.
    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(HeptaError::DimensionMismatch {
                    left: row.len(),
                    right: n,
                });
            }
            entries.extend(row);
        }
        Ok(DenseMatrix { n, entries })
    }

    /// Builds from `n` columns of length `n`, column 1 first.
    pub fn from_columns(columns: &[Vec<F>]) -> Result<Self> {
        const BLOCK: usize = 32;
        let n = columns.len();
        if let Some(col) = columns.iter().find(|c| c.len() != n) {
            return Err(HeptaError::DimensionMismatch {
                left: col.len(),
                right: n,
            });
        }
        let mut m = Self::zeros(n);
        // Tiled so both the reads and the strided writes stay in cache.
        for j0 in (0..n).step_by(BLOCK) {
            for i0 in (0..n).step_by(BLOCK) {
                for (j, col) in columns.iter().enumerate().skip(j0).take(BLOCK) {
                    for (i, v) in col.iter().enumerate().skip(i0).take(BLOCK) {
                        m.entries[i * n + j] = v.clone();
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.entries[(i - 1) * self.n..i * self.n]
    }

    /// Row-major entries.
    pub(crate) fn entries_mut(&mut self) -> &mut [F] {
        &mut self.entries
    }

    pub fn rows(&self) -> impl Iterator<Item = &[F]> {
        self.entries.chunks(self.n.max(1))
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (1..=self.n).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn map<G: Field>(&self, f: impl FnMut(&F) -> G) -> DenseMatrix<G> {
        DenseMatrix {
            n: self.n,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn try_map<G: Field>(&self, f: impl FnMut(&F) -> Result<G>) -> Result<DenseMatrix<G>> {
        Ok(DenseMatrix {
            n: self.n,
            entries: self.entries.iter().map(f).collect::<Result<_>>()?,
        })
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.n != rhs.n {
            return Err(HeptaError::DimensionMismatch {
                left: self.n,
                right: rhs.n,
            });
        }
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &rhs.entries[k * n + j];
                    if !b.is_zero() {
                        out.entries[i * n + j] = out.entries[i * n + j].clone() + a.clone() * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, x: &[F]) -> Result<Vec<F>> {
        if x.len() != self.n {
            return Err(HeptaError::DimensionMismatch {
                left: self.n,
                right: x.len(),
            });
        }
        Ok(self
            .rows()
            .map(|row| {
                row.iter()
                    .zip(x)
                    .filter(|(a, _)| !a.is_zero())
                    .fold(F::zero(), |acc, (a, b)| acc + a.clone() * b)
            })
            .collect())
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        if self.n != rhs.n {
            return Err(HeptaError::DimensionMismatch {
                left: self.n,
                right: rhs.n,
            });
        }
        Ok(DenseMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a.clone() - b)
                .collect(),
        })
    }
}

impl<F> Index<(usize, usize)> for DenseMatrix<F> {
    type Output = F;

    fn index(&self, (i, j): (usize, usize)) -> &F {
        assert!(
            (1..=self.n).contains(&i) && (1..=self.n).contains(&j),
            "index ({i},{j}) out of range for order {}",
            self.n
        );
        &self.entries[(i - 1) * self.n + (j - 1)]
    }
}

impl<F> IndexMut<(usize, usize)> for DenseMatrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        assert!(
            (1..=self.n).contains(&i) && (1..=self.n).contains(&j),
            "index ({i},{j}) out of range for order {}",
            self.n
        );
        &mut self.entries[(i - 1) * self.n + (j - 1)]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn q(v: i64) -> Rational {
        Rational::from(v)
    }

    #[test]
    fn product_and_identity() {
        let a = DenseMatrix::from_rows(vec![vec![q(1), q(2)], vec![q(3), q(4)]]).unwrap();
        let i = DenseMatrix::identity(2);
        assert_eq!(a.mul(&i).unwrap(), a);
        let sq = a.mul(&a).unwrap();
        assert_eq!(sq.row(1), &[q(7), q(10)]);
        assert_eq!(sq.row(2), &[q(15), q(22)]);
        assert_eq!(a.mul_vec(&[q(1), q(1)]).unwrap(), vec![q(3), q(7)]);
    }

    #[test]
    fn columns_round_trip() {
        let a = DenseMatrix::from_rows(vec![vec![q(1), q(2)], vec![q(3), q(4)]]).unwrap();
        let cols = vec![a.column(1), a.column(2)];
        assert_eq!(DenseMatrix::from_columns(&cols).unwrap(), a);
    }

    #[test]
    fn ragged_rows_rejected() {
        assert!(DenseMatrix::from_rows(vec![vec![q(1), q(2)], vec![q(3)]]).is_err());
    }
}
