use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::semiring::{Scalar, Semiring};

/// One nonzero: row index, column index, value.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Triple<T> {
    pub row: usize,
    pub col: usize,
    pub value: T,
}

impl<T> Triple<T> {
    pub fn new(row: usize, col: usize, value: T) -> Self {
        Triple { row, col, value }
    }

    /// Column-major key; all triple lists are ordered by it.
    #[inline]
    pub fn key(&self) -> (usize, usize) {
        (self.col, self.row)
    }
}

#[inline]
pub(crate) fn cmp_key<T>(a: &Triple<T>, b: &Triple<T>) -> Ordering {
    a.key().cmp(&b.key())
}

/// A matrix held as a list of triples sorted by (col, row).
///
/// Lists may carry repeated coordinates (an intermediate product before
/// reduction); `is_reduced` reports whether every coordinate is unique.
/// Explicit zeros are ordinary nonzeros.
#[derive(Clone, Debug, PartialEq)]
pub struct TripleList<T = f64> {
    nrows: usize,
    ncols: usize,
    triples: Vec<Triple<T>>,
    reduced: bool,
}

impl<T: Scalar> TripleList<T> {
    pub fn empty(nrows: usize, ncols: usize) -> Self {
        TripleList {
            nrows,
            ncols,
            triples: Vec::new(),
            reduced: true,
        }
    }

    /// Builds a list from triples in any order. The sort is stable, so
    /// repeated coordinates keep their input order.
    pub fn new(nrows: usize, ncols: usize, mut triples: Vec<Triple<T>>) -> Result<Self> {
        check_bounds(nrows, ncols, &triples)?;
        triples.sort_by(cmp_key);
        let reduced = is_strictly_sorted(&triples);
        Ok(TripleList {
            nrows,
            ncols,
            triples,
            reduced,
        })
    }

    /// Builds a list from triples already sorted by (col, row); repeated
    /// coordinates are allowed.
    pub fn from_sorted(nrows: usize, ncols: usize, triples: Vec<Triple<T>>) -> Result<Self> {
        check_bounds(nrows, ncols, &triples)?;
        let mut reduced = true;
        for w in triples.windows(2) {
            match cmp_key(&w[0], &w[1]) {
                Ordering::Less => {}
                Ordering::Equal => reduced = false,
                Ordering::Greater => {
                    return Err(Error::contract(format!(
                        "triples not sorted by (col,row): {:?} precedes {:?}",
                        w[0].key(),
                        w[1].key()
                    )))
                }
            }
        }
        Ok(TripleList {
            nrows,
            ncols,
            triples,
            reduced,
        })
    }

    pub(crate) fn from_parts_unchecked(nrows: usize, ncols: usize, triples: Vec<Triple<T>>, reduced: bool) -> Self {
        debug_assert!(triples.windows(2).all(|w| cmp_key(&w[0], &w[1]) != Ordering::Greater));
        debug_assert!(!reduced || is_strictly_sorted(&triples));
        TripleList {
            nrows,
            ncols,
            triples,
            reduced,
        }
    }

    /// Identity matrix with `one` on the diagonal.
    pub fn identity(n: usize, one: T) -> Self {
        let triples = (0..n).map(|i| Triple::new(i, i, one)).collect();
        TripleList::from_parts_unchecked(n, n, triples, true)
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.nrows, self.ncols)
    }

    pub fn nnz(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn triples(&self) -> &[Triple<T>] {
        &self.triples
    }

    pub fn into_triples(self) -> Vec<Triple<T>> {
        self.triples
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Triple<T>> {
        self.triples.iter()
    }

    /// Combines repeated coordinates with `combine`, folding left to right
    /// in list order.
    pub fn sum_duplicates_with(self, mut combine: impl FnMut(T, T) -> T) -> Self {
        if self.reduced {
            return self;
        }
        let mut out: Vec<Triple<T>> = Vec::with_capacity(self.triples.len());
        for t in self.triples {
            match out.last_mut() {
                Some(last) if last.key() == t.key() => last.value = combine(last.value, t.value),
                _ => out.push(t),
            }
        }
        TripleList {
            nrows: self.nrows,
            ncols: self.ncols,
            triples: out,
            reduced: true,
        }
    }

    /// Combines repeated coordinates with the semiring's `add`.
    pub fn reduce<S: Semiring<Scalar = T>>(self, sr: &S) -> Self {
        self.sum_duplicates_with(|a, b| sr.add(a, b))
    }

    pub fn map_values<U: Scalar>(&self, mut f: impl FnMut(T) -> U) -> TripleList<U> {
        TripleList {
            nrows: self.nrows,
            ncols: self.ncols,
            triples: self
                .triples
                .iter()
                .map(|t| Triple::new(t.row, t.col, f(t.value)))
                .collect(),
            reduced: self.reduced,
        }
    }

    /// Swaps row and column of every triple and re-sorts.
    pub fn transpose(&self) -> Self {
        let mut triples: Vec<Triple<T>> = self
            .triples
            .iter()
            .map(|t| Triple::new(t.col, t.row, t.value))
            .collect();
        triples.sort_by(cmp_key);
        TripleList {
            nrows: self.ncols,
            ncols: self.nrows,
            triples,
            reduced: self.reduced,
        }
    }

    /// Drops entries whose value fails `keep`. Never called implicitly:
    /// explicit zeros produced by cancellation stay unless pruned here.
    pub fn prune(self, mut keep: impl FnMut(&T) -> bool) -> Self {
        let reduced = self.reduced;
        TripleList {
            nrows: self.nrows,
            ncols: self.ncols,
            triples: self.triples.into_iter().filter(|t| keep(&t.value)).collect(),
            reduced,
        }
    }

    /// Index range of the triples whose column lies in `[lo, hi)`.
    pub fn column_span(&self, lo: usize, hi: usize) -> std::ops::Range<usize> {
        let start = self.triples.partition_point(|t| t.col < lo);
        let end = start + self.triples[start..].partition_point(|t| t.col < hi);
        start..end
    }
}

fn check_bounds<T>(nrows: usize, ncols: usize, triples: &[Triple<T>]) -> Result<()> {
    match triples.iter().find(|t| t.row >= nrows || t.col >= ncols) {
        Some(t) => Err(Error::IndexOutOfBounds {
            row: t.row,
            col: t.col,
            nrows,
            ncols,
        }),
        None => Ok(()),
    }
}

fn is_strictly_sorted<T>(triples: &[Triple<T>]) -> bool {
    triples.windows(2).all(|w| cmp_key(&w[0], &w[1]) == Ordering::Less)
}
