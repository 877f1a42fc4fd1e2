use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::kernels::parallel::{balanced_ranges, run_parts, PARTS_PER_THREAD};
use crate::matrix::{DcscMatrix, Triple, TripleList};
use crate::semiring::Semiring;

/// Instrumentation from one [`heap_spgemm_with_stats`] call.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct HeapStats {
    /// Scalar multiplications performed.
    pub flops: usize,
    /// Sum over worker threads of the largest heap each one held. Heaps
    /// are sized by `nnz(B(:,j))`, so this never exceeds `nnz(B)`.
    pub peak_heap_entries: usize,
}

struct Cursor<'a, T> {
    rows: &'a [usize],
    vals: &'a [T],
    pos: usize,
    b_val: T,
}

#[derive(Default)]
struct Workspace {
    peak: usize,
    flops: usize,
}

/// C = A·B column by column, accumulating each output column with a heap
/// keyed by row index (ties broken by position in `B(:,j)`).
///
/// Output columns are split into `4 · nthreads` parts of similar `nnz(B)`
/// and scheduled dynamically; one thread owns each column, so the result is
/// bit-identical for every thread count.
pub fn heap_spgemm<S: Semiring>(
    a: &DcscMatrix<S::Scalar>,
    b: &DcscMatrix<S::Scalar>,
    sr: &S,
    nthreads: usize,
) -> Result<TripleList<S::Scalar>> {
    heap_spgemm_with_stats(a, b, sr, nthreads).map(|(c, _)| c)
}

pub fn heap_spgemm_with_stats<S: Semiring>(
    a: &DcscMatrix<S::Scalar>,
    b: &DcscMatrix<S::Scalar>,
    sr: &S,
    nthreads: usize,
) -> Result<(TripleList<S::Scalar>, HeapStats)> {
    if a.ncols() != b.nrows() {
        return Err(Error::dims(format!(
            "cannot multiply {}x{} by {}x{}",
            a.nrows(),
            a.ncols(),
            b.nrows(),
            b.ncols()
        )));
    }
    let nthreads = nthreads.max(1);
    let parts = balanced_ranges(b.cp(), nthreads * PARTS_PER_THREAD);
    let (chunks, workspaces) = run_parts(parts.len(), nthreads, Workspace::default, |ws, p| {
        let mut out: Vec<Triple<S::Scalar>> = Vec::new();
        let mut heap: BinaryHeap<Reverse<(usize, usize)>> = BinaryHeap::new();
        let mut cursors: Vec<Cursor<'_, S::Scalar>> = Vec::new();
        for kb in parts[p].clone() {
            let (j, b_rows, b_vals) = b.column_at(kb);
            cursors.clear();
            heap.clear();
            for (&k, &b_val) in b_rows.iter().zip(b_vals) {
                if let Some((rows, vals)) = a.column(k) {
                    heap.push(Reverse((rows[0], cursors.len())));
                    cursors.push(Cursor {
                        rows,
                        vals,
                        pos: 0,
                        b_val,
                    });
                }
            }
            ws.peak = ws.peak.max(heap.len());
            let col_start = out.len();
            while let Some(Reverse((row, src))) = heap.pop() {
                let cur = &mut cursors[src];
                let prod = sr.multiply(cur.vals[cur.pos], cur.b_val);
                ws.flops += 1;
                match out[col_start..].last_mut() {
                    Some(last) if last.row == row => last.value = sr.add(last.value, prod),
                    _ => out.push(Triple::new(row, j, prod)),
                }
                cur.pos += 1;
                if cur.pos < cur.rows.len() {
                    heap.push(Reverse((cur.rows[cur.pos], src)));
                }
            }
        }
        out
    });
    let stats = HeapStats {
        flops: workspaces.iter().map(|w| w.flops).sum(),
        peak_heap_entries: workspaces.iter().map(|w| w.peak).sum(),
    };
    let triples: Vec<Triple<S::Scalar>> = chunks.into_iter().flatten().collect();
    Ok((
        TripleList::from_parts_unchecked(a.nrows(), b.ncols(), triples, true),
        stats,
    ))
}
