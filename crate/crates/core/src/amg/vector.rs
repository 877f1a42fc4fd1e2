use crate::error::{Error, Result};
use crate::matrix::DcscMatrix;
use crate::semiring::{Scalar, Semiring};

/// A length-`n` vector storing only its present entries, by increasing
/// index.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseVector<T> {
    len: usize,
    idx: Vec<usize>,
    vals: Vec<T>,
}

impl<T: Scalar> SparseVector<T> {
    pub fn empty(len: usize) -> Self {
        SparseVector {
            len,
            idx: Vec::new(),
            vals: Vec::new(),
        }
    }

    /// Entries must have strictly increasing indices below `len`.
    pub fn new(len: usize, entries: Vec<(usize, T)>) -> Result<Self> {
        if entries.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::contract("sparse vector indices must be strictly increasing"));
        }
        if let Some(&(i, _)) = entries.last().filter(|(i, _)| *i >= len) {
            return Err(Error::dims(format!("index {i} outside a vector of length {len}")));
        }
        let (idx, vals) = entries.into_iter().unzip();
        Ok(SparseVector { len, idx, vals })
    }

    /// Every index of `0..len` present with the value `f(i)`.
    pub fn full(len: usize, f: impl FnMut(usize) -> T) -> Self {
        SparseVector {
            len,
            idx: (0..len).collect(),
            vals: (0..len).map(f).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn nnz(&self) -> usize {
        self.idx.len()
    }

    pub fn is_empty(&self) -> bool {
        self.idx.is_empty()
    }

    pub fn indices(&self) -> &[usize] {
        &self.idx
    }

    pub fn values(&self) -> &[T] {
        &self.vals
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, T)> + '_ {
        self.idx.iter().copied().zip(self.vals.iter().copied())
    }

    pub fn get(&self, i: usize) -> Option<T> {
        self.idx.binary_search(&i).ok().map(|p| self.vals[p])
    }

    /// Replaces every value with `f(index, value)`.
    pub fn apply<U: Scalar>(&self, mut f: impl FnMut(usize, T) -> U) -> SparseVector<U> {
        SparseVector {
            len: self.len,
            idx: self.idx.clone(),
            vals: self.iter().map(|(i, v)| f(i, v)).collect(),
        }
    }
}

fn same_len<T, U>(x: &SparseVector<T>, y: &SparseVector<U>) -> Result<()> {
    if x.len != y.len {
        return Err(Error::dims(format!("vector lengths {} and {} differ", x.len, y.len)));
    }
    Ok(())
}

/// y = A ⊕.⊗ x: `y[i]` folds `sr.multiply(A(i,j), x[j])` with `sr.add`
/// over the present `x[j]`, in increasing `j`. Rows no product reaches are
/// absent from `y`.
pub fn mxv<S: Semiring>(
    a: &DcscMatrix<S::Scalar>,
    x: &SparseVector<S::Scalar>,
    sr: &S,
) -> Result<SparseVector<S::Scalar>> {
    if a.ncols() != x.len() {
        return Err(Error::dims(format!(
            "cannot multiply a {}x{} matrix by a vector of length {}",
            a.nrows(),
            a.ncols(),
            x.len()
        )));
    }
    let mut acc: Vec<Option<S::Scalar>> = vec![None; a.nrows()];
    let mut touched = Vec::new();
    for (j, xj) in x.iter() {
        if let Some((rows, vals)) = a.column(j) {
            for (&i, &aij) in rows.iter().zip(vals) {
                let prod = sr.multiply(aij, xj);
                acc[i] = Some(match acc[i] {
                    Some(cur) => sr.add(cur, prod),
                    None => {
                        touched.push(i);
                        prod
                    }
                });
            }
        }
    }
    touched.sort_unstable();
    let entries = touched.into_iter().map(|i| (i, acc[i].unwrap())).collect();
    SparseVector::new(a.nrows(), entries)
}

/// Union of index sets; `f` combines values present in both.
pub fn ewise_add<T: Scalar>(
    x: &SparseVector<T>,
    y: &SparseVector<T>,
    mut f: impl FnMut(T, T) -> T,
) -> Result<SparseVector<T>> {
    same_len(x, y)?;
    let (mut p, mut q) = (0, 0);
    let mut out = Vec::with_capacity(x.nnz() + y.nnz());
    while p < x.nnz() || q < y.nnz() {
        let xi = x.idx.get(p).copied().unwrap_or(usize::MAX);
        let yi = y.idx.get(q).copied().unwrap_or(usize::MAX);
        if xi < yi {
            out.push((xi, x.vals[p]));
            p += 1;
        } else if yi < xi {
            out.push((yi, y.vals[q]));
            q += 1;
        } else {
            out.push((xi, f(x.vals[p], y.vals[q])));
            p += 1;
            q += 1;
        }
    }
    SparseVector::new(x.len, out)
}

/// Intersection of index sets, values combined by `f`.
pub fn ewise_mult<T: Scalar, U: Scalar, V: Scalar>(
    x: &SparseVector<T>,
    y: &SparseVector<U>,
    mut f: impl FnMut(T, U) -> V,
) -> Result<SparseVector<V>> {
    same_len(x, y)?;
    let mut out = Vec::with_capacity(x.nnz().min(y.nnz()));
    let (mut p, mut q) = (0, 0);
    while p < x.nnz() && q < y.nnz() {
        match x.idx[p].cmp(&y.idx[q]) {
            std::cmp::Ordering::Less => p += 1,
            std::cmp::Ordering::Greater => q += 1,
            std::cmp::Ordering::Equal => {
                out.push((x.idx[p], f(x.vals[p], y.vals[q])));
                p += 1;
                q += 1;
            }
        }
    }
    SparseVector::new(x.len, out)
}

/// Entries of `x` whose index is absent from `mask`.
pub fn mask_out<T: Scalar, U: Scalar>(x: &SparseVector<T>, mask: &SparseVector<U>) -> Result<SparseVector<T>> {
    same_len(x, mask)?;
    let entries = x.iter().filter(|(i, _)| mask.idx.binary_search(i).is_err()).collect();
    SparseVector::new(x.len, entries)
}
