//! Block layouts of matrices over the process grid.
//!
//! Rows are cut into `pr` blocks and columns into `pc` blocks of size
//! `⌈dim/parts⌉` (the last block takes the remainder, trailing blocks may be
//! empty). On a 3D grid each column block is cut again into `pl` sub-blocks
//! of size `⌈len/pl⌉`, so P(i,j,k) owns rows of block `i` and the `k`-th
//! slice of column block `j`. No entry is stored twice.

use std::ops::Range;

use crate::error::{Error, Result};
use crate::grid::GridShape;
use crate::matrix::{DcscMatrix, Triple, TripleList};
use crate::semiring::Scalar;

/// The `idx`-th of `parts` near-equal pieces of `0..n`.
pub fn block_range(n: usize, parts: usize, idx: usize) -> Range<usize> {
    offset_range(0..n, parts, idx)
}

/// The `idx`-th of `parts` near-equal pieces of `r`.
pub fn offset_range(r: Range<usize>, parts: usize, idx: usize) -> Range<usize> {
    let len = r.end - r.start;
    let size = len.div_ceil(parts.max(1));
    let lo = (idx * size).min(len);
    let hi = (lo + size).min(len);
    r.start + lo..r.start + hi
}

/// Which piece of `0..n` (cut as in [`block_range`]) contains `x`.
pub fn block_of(n: usize, parts: usize, x: usize) -> usize {
    x / n.div_ceil(parts.max(1)).max(1)
}

/// Global rows and columns owned by P(i,j,k) for an `nrows × ncols` matrix.
pub fn owned_ranges(
    nrows: usize,
    ncols: usize,
    shape: GridShape,
    (i, j, k): (usize, usize, usize),
) -> (Range<usize>, Range<usize>) {
    let rows = block_range(nrows, shape.pr, i);
    let cols = offset_range(block_range(ncols, shape.pc, j), shape.pl, k);
    (rows, cols)
}

/// One process's share of a distributed matrix, stored with 0-based local
/// indices.
#[derive(Clone, Debug, PartialEq)]
pub struct SplitBlock<T = f64> {
    pub coords: (usize, usize, usize),
    /// Global shape of the distributed matrix.
    pub global: (usize, usize),
    /// Global index of local row 0.
    pub row_offset: usize,
    /// Global index of local column 0.
    pub col_offset: usize,
    pub matrix: DcscMatrix<T>,
}

impl<T: Scalar> SplitBlock<T> {
    /// The block's entries with global indices.
    pub fn global_triples(&self) -> impl Iterator<Item = Triple<T>> + '_ {
        let t = &self.matrix;
        (0..t.nzc()).flat_map(move |k| {
            let (j, rows, vals) = t.column_at(k);
            rows.iter()
                .zip(vals)
                .map(move |(&r, &v)| Triple::new(r + self.row_offset, j + self.col_offset, v))
        })
    }
}

/// Splits a reduced matrix over a 3D grid, one block per rank.
pub fn distribute_3d<T: Scalar>(t: &TripleList<T>, shape: GridShape) -> Result<Vec<SplitBlock<T>>> {
    if !t.is_reduced() {
        return Err(Error::contract("only reduced triple lists can be distributed"));
    }
    let (m, n) = t.shape();
    let mut buckets: Vec<Vec<Triple<T>>> = vec![Vec::new(); shape.size()];
    let ranges: Vec<_> = (0..shape.size())
        .map(|r| owned_ranges(m, n, shape, shape.coords(r)))
        .collect();
    for tr in t.iter() {
        let i = block_of(m, shape.pr, tr.row);
        let j = block_of(n, shape.pc, tr.col);
        let outer = block_range(n, shape.pc, j);
        let k = block_of(outer.len(), shape.pl, tr.col - outer.start);
        let rank = shape.rank(i, j, k);
        let (rows, cols) = &ranges[rank];
        buckets[rank].push(Triple::new(tr.row - rows.start, tr.col - cols.start, tr.value));
    }
    // Input order is (col,row) and the offsets are per block, so every bucket
    // is still sorted.
    Ok(buckets
        .into_iter()
        .enumerate()
        .map(|(rank, triples)| {
            let (rows, cols) = ranges[rank].clone();
            SplitBlock {
                coords: shape.coords(rank),
                global: (m, n),
                row_offset: rows.start,
                col_offset: cols.start,
                matrix: DcscMatrix::from_sorted_triples(rows.len(), cols.len(), &triples),
            }
        })
        .collect())
}

/// [`distribute_3d`] on a single layer.
pub fn distribute_2d<T: Scalar>(t: &TripleList<T>, pr: usize, pc: usize) -> Result<Vec<SplitBlock<T>>> {
    distribute_3d(t, GridShape::new(pr, pc, 1)?)
}

/// Reassembles a distributed matrix. Two blocks claiming the same global
/// coordinate is a contract violation.
pub fn gather<T: Scalar>(blocks: &[SplitBlock<T>]) -> Result<TripleList<T>> {
    let (m, n) = blocks
        .first()
        .map(|b| b.global)
        .ok_or_else(|| Error::config("nothing to gather"))?;
    if blocks.iter().any(|b| b.global != (m, n)) {
        return Err(Error::dims("blocks disagree on the global shape"));
    }
    let triples: Vec<Triple<T>> = blocks.iter().flat_map(|b| b.global_triples()).collect();
    let t = TripleList::new(m, n, triples)?;
    if !t.is_reduced() {
        return Err(Error::contract("gathered blocks overlap"));
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense(n: usize) -> TripleList<i64> {
        let triples = (0..n)
            .flat_map(|j| (0..n).map(move |i| Triple::new(i, j, (i * n + j) as i64)))
            .collect();
        TripleList::new(n, n, triples).unwrap()
    }

    #[test]
    fn ranges_with_remainder() {
        assert_eq!(block_range(10, 3, 0), 0..4);
        assert_eq!(block_range(10, 3, 2), 8..10);
        assert_eq!(block_range(2, 4, 3), 2..2);
        assert_eq!(block_of(10, 3, 9), 2);
        assert_eq!(offset_range(4..8, 2, 1), 6..8);
    }

    #[test]
    fn two_d_block_owns_upper_right() {
        let blocks = distribute_2d(&dense(8), 2, 2).unwrap();
        let b = &blocks[GridShape::new(2, 2, 1).unwrap().rank(0, 1, 0)];
        assert_eq!((b.row_offset, b.col_offset), (0, 4));
        assert_eq!(b.matrix.shape(), (4, 4));
        assert_eq!(b.matrix.nnz(), 16);
    }

    #[test]
    fn three_d_block_range() {
        let shape = GridShape::new(2, 2, 2).unwrap();
        let blocks = distribute_3d(&dense(8), shape).unwrap();
        let b = &blocks[shape.rank(0, 0, 1)];
        assert_eq!((b.row_offset, b.col_offset), (0, 2));
        assert_eq!(b.matrix.shape(), (4, 2));
        assert!(b.global_triples().all(|t| t.row < 4 && (2..4).contains(&t.col)));
    }

    #[test]
    fn round_trip_uneven() {
        let t = dense(7);
        for shape in [(1, 1, 1), (2, 3, 1), (3, 2, 2), (4, 4, 4)] {
            let shape = GridShape::new(shape.0, shape.1, shape.2).unwrap();
            let blocks = distribute_3d(&t, shape).unwrap();
            assert_eq!(gather(&blocks).unwrap(), t);
        }
    }

    #[test]
    fn single_layer_matches_2d() {
        let t = dense(6);
        assert_eq!(
            distribute_3d(&t, GridShape::new(2, 3, 1).unwrap()).unwrap(),
            distribute_2d(&t, 2, 3).unwrap()
        );
    }

    #[test]
    fn overlapping_blocks_rejected() {
        let blocks = distribute_2d(&dense(2), 1, 1).unwrap();
        let twice = vec![blocks[0].clone(), blocks[0].clone()];
        assert!(matches!(gather(&twice), Err(Error::Contract(_))));
    }
}
