use crate::error::{Error, Result};
use crate::matrix::{DcscMatrix, Triple, TripleList};
use crate::semiring::Scalar;

/// Compressed sparse column storage. `colptr` has `ncols + 1` entries, so
/// this format is only appropriate for matrices that are not hypersparse;
/// it backs the serial reference multiply.
#[derive(Clone, Debug, PartialEq)]
pub struct CscMatrix<T = f64> {
    nrows: usize,
    ncols: usize,
    colptr: Vec<usize>,
    rowidx: Vec<usize>,
    values: Vec<T>,
}

impl<T: Scalar> CscMatrix<T> {
    /// Validates the CSC invariants and wraps the arrays.
    pub fn new(nrows: usize, ncols: usize, colptr: Vec<usize>, rowidx: Vec<usize>, values: Vec<T>) -> Result<Self> {
        if colptr.len() != ncols + 1 || colptr[0] != 0 {
            return Err(Error::contract("colptr must have ncols+1 entries starting at 0"));
        }
        if rowidx.len() != values.len() || colptr[ncols] != rowidx.len() {
            return Err(Error::contract("colptr[ncols] must equal nnz"));
        }
        for j in 0..ncols {
            if colptr[j] > colptr[j + 1] {
                return Err(Error::contract("colptr must be nondecreasing"));
            }
            let rows = &rowidx[colptr[j]..colptr[j + 1]];
            if rows.windows(2).any(|w| w[0] >= w[1]) || rows.iter().any(|&r| r >= nrows) {
                return Err(Error::contract(format!(
                    "row indices of column {j} must be strictly increasing and < nrows"
                )));
            }
        }
        Ok(CscMatrix {
            nrows,
            ncols,
            colptr,
            rowidx,
            values,
        })
    }

    pub fn from_triples(t: &TripleList<T>) -> Result<Self> {
        if !t.is_reduced() {
            return Err(Error::contract("CSC conversion requires a reduced triple list"));
        }
        let mut colptr = vec![0usize; t.ncols() + 1];
        for tr in t.iter() {
            colptr[tr.col + 1] += 1;
        }
        for j in 0..t.ncols() {
            colptr[j + 1] += colptr[j];
        }
        Ok(CscMatrix {
            nrows: t.nrows(),
            ncols: t.ncols(),
            colptr,
            rowidx: t.iter().map(|tr| tr.row).collect(),
            values: t.iter().map(|tr| tr.value).collect(),
        })
    }

    pub fn to_triples(&self) -> TripleList<T> {
        let mut triples = Vec::with_capacity(self.nnz());
        for j in 0..self.ncols {
            for p in self.colptr[j]..self.colptr[j + 1] {
                triples.push(Triple::new(self.rowidx[p], j, self.values[p]));
            }
        }
        TripleList::from_parts_unchecked(self.nrows, self.ncols, triples, true)
    }

    pub fn from_dcsc(m: &DcscMatrix<T>) -> Self {
        let mut colptr = vec![0usize; m.ncols() + 1];
        for (pos, &j) in m.jc().iter().enumerate() {
            colptr[j + 1] = m.cp()[pos + 1] - m.cp()[pos];
        }
        for j in 0..m.ncols() {
            colptr[j + 1] += colptr[j];
        }
        CscMatrix {
            nrows: m.nrows(),
            ncols: m.ncols(),
            colptr,
            rowidx: m.rowidx().to_vec(),
            values: m.values().to_vec(),
        }
    }

    pub fn to_dcsc(&self) -> DcscMatrix<T> {
        let mut jc = Vec::new();
        let mut cp = vec![0usize];
        for j in 0..self.ncols {
            if self.colptr[j + 1] > self.colptr[j] {
                jc.push(j);
                cp.push(self.colptr[j + 1]);
            }
        }
        DcscMatrix::from_parts_unchecked(self.nrows, self.ncols, jc, cp, self.rowidx.clone(), self.values.clone())
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.rowidx.len()
    }

    pub fn colptr(&self) -> &[usize] {
        &self.colptr
    }

    pub fn rowidx(&self) -> &[usize] {
        &self.rowidx
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    /// Row indices and values of column `j`.
    pub fn column(&self, j: usize) -> (&[usize], &[T]) {
        let r = self.colptr[j]..self.colptr[j + 1];
        (&self.rowidx[r.clone()], &self.values[r])
    }
}
