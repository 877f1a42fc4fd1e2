use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::matrix::{Triple, TripleList};
use crate::semiring::Scalar;

/// Doubly compressed sparse column storage.
///
/// Only nonempty columns are stored: `jc[k]` is the column index of the k-th
/// nonempty column and `cp[k]..cp[k+1]` its range in `rowidx`/`values`. No
/// array depends on `ncols`, so total storage is O(nnz) and blocks of a
/// distributed matrix may be hypersparse.
///
/// The optional lookup array is built on first column access. It splits the
/// column space into at most `nzc` equal chunks and records where each chunk
/// begins in `jc`, which keeps it O(nnz) as well.
#[derive(Debug)]
pub struct DcscMatrix<T = f64> {
    nrows: usize,
    ncols: usize,
    jc: Vec<usize>,
    cp: Vec<usize>,
    rowidx: Vec<usize>,
    values: Vec<T>,
    aux: OnceLock<Aux>,
}

#[derive(Clone, Debug)]
struct Aux {
    chunk: usize,
    starts: Vec<usize>,
}

impl Aux {
    fn build(ncols: usize, jc: &[usize]) -> Aux {
        let nzc = jc.len();
        if nzc == 0 {
            return Aux {
                chunk: 1,
                starts: vec![0],
            };
        }
        let chunk = ncols.div_ceil(nzc).max(1);
        let nchunks = ncols.div_ceil(chunk);
        let mut starts = Vec::with_capacity(nchunks + 1);
        let mut pos = 0;
        for c in 0..=nchunks {
            let first_col = c * chunk;
            while pos < nzc && jc[pos] < first_col {
                pos += 1;
            }
            starts.push(pos);
        }
        Aux { chunk, starts }
    }
}

impl<T: Clone> Clone for DcscMatrix<T> {
    fn clone(&self) -> Self {
        DcscMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            jc: self.jc.clone(),
            cp: self.cp.clone(),
            rowidx: self.rowidx.clone(),
            values: self.values.clone(),
            aux: self.aux.clone(),
        }
    }
}

impl<T: PartialEq> PartialEq for DcscMatrix<T> {
    fn eq(&self, other: &Self) -> bool {
        self.nrows == other.nrows
            && self.ncols == other.ncols
            && self.jc == other.jc
            && self.cp == other.cp
            && self.rowidx == other.rowidx
            && self.values == other.values
    }
}

impl<T: Scalar> DcscMatrix<T> {
    pub fn empty(nrows: usize, ncols: usize) -> Self {
        DcscMatrix::from_parts_unchecked(nrows, ncols, Vec::new(), vec![0], Vec::new(), Vec::new())
    }

    /// Wraps raw DCSC arrays after checking every structural invariant.
    pub fn from_parts(
        nrows: usize,
        ncols: usize,
        jc: Vec<usize>,
        cp: Vec<usize>,
        rowidx: Vec<usize>,
        values: Vec<T>,
    ) -> Result<Self> {
        if cp.len() != jc.len() + 1 || cp[0] != 0 {
            return Err(Error::contract("cp must have nzc+1 entries starting at 0"));
        }
        if rowidx.len() != values.len() || *cp.last().unwrap() != rowidx.len() {
            return Err(Error::contract("cp[nzc] must equal nnz"));
        }
        if jc.windows(2).any(|w| w[0] >= w[1]) || jc.last().is_some_and(|&j| j >= ncols) {
            return Err(Error::contract("jc must be strictly increasing and < ncols"));
        }
        for k in 0..jc.len() {
            if cp[k] >= cp[k + 1] {
                return Err(Error::contract(format!("column {} listed in jc is empty", jc[k])));
            }
            let rows = &rowidx[cp[k]..cp[k + 1]];
            if rows.windows(2).any(|w| w[0] >= w[1]) || rows.iter().any(|&r| r >= nrows) {
                return Err(Error::contract(format!(
                    "row indices of column {} must be strictly increasing and < nrows",
                    jc[k]
                )));
            }
        }
        Ok(DcscMatrix::from_parts_unchecked(nrows, ncols, jc, cp, rowidx, values))
    }

    pub(crate) fn from_parts_unchecked(
        nrows: usize,
        ncols: usize,
        jc: Vec<usize>,
        cp: Vec<usize>,
        rowidx: Vec<usize>,
        values: Vec<T>,
    ) -> Self {
        DcscMatrix {
            nrows,
            ncols,
            jc,
            cp,
            rowidx,
            values,
            aux: OnceLock::new(),
        }
    }

    /// Converts a sorted, reduced triple list.
    pub fn from_triples(t: &TripleList<T>) -> Result<Self> {
        if !t.is_reduced() {
            return Err(Error::contract("DCSC conversion requires a reduced triple list"));
        }
        Ok(Self::from_sorted_triples(t.nrows(), t.ncols(), t.triples()))
    }

    /// `triples` must be sorted by (col,row) without repeats.
    pub(crate) fn from_sorted_triples(nrows: usize, ncols: usize, triples: &[Triple<T>]) -> Self {
        let mut jc = Vec::new();
        let mut cp = vec![0usize];
        let mut rowidx = Vec::with_capacity(triples.len());
        let mut values = Vec::with_capacity(triples.len());
        for (p, t) in triples.iter().enumerate() {
            if jc.last() != Some(&t.col) {
                if p > 0 {
                    cp.push(p);
                }
                jc.push(t.col);
            }
            rowidx.push(t.row);
            values.push(t.value);
        }
        if !triples.is_empty() {
            cp.push(triples.len());
        }
        DcscMatrix::from_parts_unchecked(nrows, ncols, jc, cp, rowidx, values)
    }

    pub fn to_triples(&self) -> TripleList<T> {
        let mut triples = Vec::with_capacity(self.nnz());
        for (k, &j) in self.jc.iter().enumerate() {
            for p in self.cp[k]..self.cp[k + 1] {
                triples.push(Triple::new(self.rowidx[p], j, self.values[p]));
            }
        }
        TripleList::from_parts_unchecked(self.nrows, self.ncols, triples, true)
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
        self.rowidx.len()
    }

    /// Number of nonempty columns.
    pub fn nzc(&self) -> usize {
        self.jc.len()
    }

    pub fn jc(&self) -> &[usize] {
        &self.jc
    }

    pub fn cp(&self) -> &[usize] {
        &self.cp
    }

    pub fn rowidx(&self) -> &[usize] {
        &self.rowidx
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn has_aux(&self) -> bool {
        self.aux.get().is_some()
    }

    /// Total number of array slots held, including the lookup array if it
    /// has been built.
    pub fn storage_len(&self) -> usize {
        self.jc.len()
            + self.cp.len()
            + self.rowidx.len()
            + self.values.len()
            + self.aux.get().map_or(0, |a| a.starts.len())
    }

    /// The k-th stored column: (column index, row indices, values).
    pub fn column_at(&self, k: usize) -> (usize, &[usize], &[T]) {
        let r = self.cp[k]..self.cp[k + 1];
        (self.jc[k], &self.rowidx[r.clone()], &self.values[r])
    }

    fn aux(&self) -> &Aux {
        self.aux.get_or_init(|| Aux::build(self.ncols, &self.jc))
    }

    /// First position in `jc` whose column is `>= col`.
    pub fn lower_bound(&self, col: usize) -> usize {
        if col >= self.ncols || self.jc.is_empty() {
            return self.jc.len();
        }
        let aux = self.aux();
        let c = col / aux.chunk;
        let (lo, hi) = (aux.starts[c], aux.starts[c + 1]);
        lo + self.jc[lo..hi].partition_point(|&j| j < col)
    }

    /// Row indices and values of column `col`, if it has any nonzeros.
    pub fn column(&self, col: usize) -> Option<(&[usize], &[T])> {
        let k = self.lower_bound(col);
        if k < self.jc.len() && self.jc[k] == col {
            let (_, rows, vals) = self.column_at(k);
            Some((rows, vals))
        } else {
            None
        }
    }

    /// Columns `[lo, hi)` as a matrix with `hi - lo` columns, rebased to 0.
    pub fn extract_columns(&self, lo: usize, hi: usize) -> Result<Self> {
        if lo > hi || hi > self.ncols {
            return Err(Error::dims(format!(
                "column range [{lo}, {hi}) outside 0..{}",
                self.ncols
            )));
        }
        let (k0, k1) = (self.lower_bound(lo), self.lower_bound(hi));
        let (p0, p1) = (self.cp[k0], self.cp[k1]);
        Ok(DcscMatrix::from_parts_unchecked(
            self.nrows,
            hi - lo,
            self.jc[k0..k1].iter().map(|&j| j - lo).collect(),
            self.cp[k0..=k1].iter().map(|&p| p - p0).collect(),
            self.rowidx[p0..p1].to_vec(),
            self.values[p0..p1].to_vec(),
        ))
    }

    pub fn transpose(&self) -> Self {
        let t = self.to_triples().transpose();
        Self::from_sorted_triples(t.nrows(), t.ncols(), t.triples())
    }

    pub fn map_values<U: Scalar>(&self, f: impl FnMut(&T) -> U) -> DcscMatrix<U> {
        DcscMatrix::from_parts_unchecked(
            self.nrows,
            self.ncols,
            self.jc.clone(),
            self.cp.clone(),
            self.rowidx.clone(),
            self.values.iter().map(f).collect(),
        )
    }

    /// Number of nonzeros in each row, as sorted (row, count) pairs.
    pub(crate) fn row_counts(&self) -> Vec<(usize, usize)> {
        let mut rows = self.rowidx.clone();
        rows.sort_unstable();
        let mut out: Vec<(usize, usize)> = Vec::new();
        for r in rows {
            match out.last_mut() {
                Some((last, n)) if *last == r => *n += 1,
                _ => out.push((r, 1)),
            }
        }
        out
    }
}
