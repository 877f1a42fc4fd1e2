//! Local multiply and merge kernels.

mod heap;
mod merge;
pub(crate) mod parallel;
mod spa;

pub use heap::{heap_spgemm, heap_spgemm_with_stats, HeapStats};
pub use merge::{merge_sorted, multiway_merge, multiway_merge_runs};
pub use spa::{spa_spgemm, spa_spgemm_counted};

use crate::error::{Error, Result};
use crate::matrix::DcscMatrix;
use crate::semiring::Scalar;

/// Number of scalar multiplications in A·B: the sum over inner index k of
/// nnz(A(:,k)) · nnz(B(k,:)).
pub fn flops_count<T: Scalar>(a: &DcscMatrix<T>, b: &DcscMatrix<T>) -> Result<usize> {
    if a.ncols() != b.nrows() {
        return Err(Error::dims(format!(
            "cannot multiply {}x{} by {}x{}",
            a.nrows(),
            a.ncols(),
            b.nrows(),
            b.ncols()
        )));
    }
    Ok(b.row_counts()
        .into_iter()
        .map(|(k, n)| n * a.column(k).map_or(0, |(rows, _)| rows.len()))
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{Triple, TripleList};

    fn dense(n: usize) -> DcscMatrix<f64> {
        let t = (0..n)
            .flat_map(|j| (0..n).map(move |i| Triple::new(i, j, 1.0)))
            .collect();
        DcscMatrix::from_triples(&TripleList::new(n, n, t).unwrap()).unwrap()
    }

    #[test]
    fn identity_flops_equal_nnz() {
        let b = dense(5);
        let i = DcscMatrix::from_triples(&TripleList::identity(5, 1.0)).unwrap();
        assert_eq!(flops_count(&i, &b).unwrap(), b.nnz());
    }

    #[test]
    fn dense_flops_are_cubic() {
        assert_eq!(flops_count(&dense(7), &dense(7)).unwrap(), 343);
    }

    #[test]
    fn mismatch() {
        assert!(flops_count(&dense(2), &dense(3)).is_err());
    }
}
