use std::ops::{Index, IndexMut, RangeInclusive};

/// Vector addressed by a contiguous 1-based index range `first..=last`.
///
/// Indexing outside the range panics; [`OffsetVec::get`] returns `None`.
#[derive(Clone, PartialEq, Debug)]
pub struct OffsetVec<F> {
    first: usize,
    data: Vec<F>,
}

impl<F: Clone> OffsetVec<F> {
    /// Range `first..=last`, which may be empty when `last < first`.
    pub fn filled(first: usize, last: usize, value: F) -> Self {
        let len = (last + 1).saturating_sub(first);
        OffsetVec {
            first,
            data: vec![value; len],
        }
    }
}

impl<F> OffsetVec<F> {
    pub fn from_vec(first: usize, data: Vec<F>) -> Self {
        OffsetVec { first, data }
    }

    pub fn range(&self) -> RangeInclusive<usize> {
        self.first..=self.first + self.data.len() - 1
    }

    pub fn first(&self) -> usize {
        self.first
    }

    pub fn last(&self) -> usize {
        self.first + self.data.len() - 1
    }

    pub fn get(&self, i: usize) -> Option<&F> {
        i.checked_sub(self.first).and_then(|k| self.data.get(k))
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &F)> {
        self.data
            .iter()
            .enumerate()
            .map(move |(k, v)| (k + self.first, v))
    }

    pub fn values(&self) -> &[F] {
        &self.data
    }
}

impl<F> Index<usize> for OffsetVec<F> {
    type Output = F;

    fn index(&self, i: usize) -> &F {
        match self.get(i) {
            Some(v) => v,
            None => panic!(
                "index {i} outside {}..={}",
                self.first,
                self.first + self.data.len() - 1
            ),
        }
    }
}

impl<F> IndexMut<usize> for OffsetVec<F> {
    fn index_mut(&mut self, i: usize) -> &mut F {
        let (first, len) = (self.first, self.data.len());
        i.checked_sub(first)
            .and_then(|k| self.data.get_mut(k))
            .unwrap_or_else(|| panic!("index {i} outside {first}..={}", first + len - 1))
    }
}
