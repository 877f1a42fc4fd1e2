use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::kernels::parallel::{run_parts, PARTS_PER_THREAD};
use crate::matrix::{cmp_key, Triple, TripleList};
use crate::semiring::{Scalar, Semiring};

/// Sums a family of triple lists by k-way merging with a heap of size k.
///
/// Repeated (row, col) pairs, within or across lists, are folded with
/// `sr.add` in (list index, position) order. The column space is cut into
/// `4 · nthreads` ranges whose bounds are located in every list by binary
/// search; each range is merged by one thread, so the output does not depend
/// on `nthreads`.
pub fn multiway_merge<S: Semiring>(
    lists: &[TripleList<S::Scalar>],
    sr: &S,
    nthreads: usize,
) -> Result<TripleList<S::Scalar>> {
    let (nrows, ncols) = common_shape(lists)?;
    let runs: Vec<&[Triple<S::Scalar>]> = lists.iter().map(|l| l.triples()).collect();
    merge_runs(nrows, ncols, &runs, Some(&|a, b| sr.add(a, b)), nthreads)
}

/// Merges lists into one sorted list without combining repeated
/// coordinates.
pub fn merge_sorted<T: Scalar>(lists: &[TripleList<T>], nthreads: usize) -> Result<TripleList<T>> {
    let (nrows, ncols) = common_shape(lists)?;
    let runs: Vec<&[Triple<T>]> = lists.iter().map(|l| l.triples()).collect();
    merge_runs(nrows, ncols, &runs, None, nthreads)
}

/// [`multiway_merge`] over raw triple slices. Each run must be sorted by
/// (col, row); an unsorted run is a contract violation.
pub fn multiway_merge_runs<S: Semiring>(
    nrows: usize,
    ncols: usize,
    runs: &[&[Triple<S::Scalar>]],
    sr: &S,
    nthreads: usize,
) -> Result<TripleList<S::Scalar>> {
    for (l, run) in runs.iter().enumerate() {
        if run.windows(2).any(|w| cmp_key(&w[0], &w[1]) == Ordering::Greater) {
            return Err(Error::contract(format!("merge input {l} is not sorted by (col,row)")));
        }
        if let Some(t) = run.iter().find(|t| t.row >= nrows || t.col >= ncols) {
            return Err(Error::IndexOutOfBounds {
                row: t.row,
                col: t.col,
                nrows,
                ncols,
            });
        }
    }
    merge_runs(nrows, ncols, runs, Some(&|a, b| sr.add(a, b)), nthreads)
}

fn common_shape<T: Scalar>(lists: &[TripleList<T>]) -> Result<(usize, usize)> {
    let first = lists
        .first()
        .ok_or_else(|| Error::dims("cannot infer the shape of an empty list family"))?;
    if let Some(l) = lists.iter().find(|l| l.shape() != first.shape()) {
        return Err(Error::dims(format!(
            "merge inputs disagree on shape: {:?} vs {:?}",
            first.shape(),
            l.shape()
        )));
    }
    Ok(first.shape())
}

type Combine<'a, T> = Option<&'a (dyn Fn(T, T) -> T + Sync)>;

fn merge_runs<T: Scalar>(
    nrows: usize,
    ncols: usize,
    runs: &[&[Triple<T>]],
    combine: Combine<'_, T>,
    nthreads: usize,
) -> Result<TripleList<T>> {
    let nthreads = nthreads.max(1);
    let bounds = column_bounds(runs, nthreads * PARTS_PER_THREAD);
    let nparts = bounds.len() - 1;
    let (chunks, _) = run_parts(
        nparts,
        nthreads,
        || (),
        |_, p| {
            let (lo, hi) = (bounds[p], bounds[p + 1]);
            let slices: Vec<&[Triple<T>]> = runs
                .iter()
                .map(|run| {
                    let start = run.partition_point(|t| t.col < lo);
                    let end = start + run[start..].partition_point(|t| t.col < hi);
                    &run[start..end]
                })
                .collect();
            merge_slices(&slices, combine)
        },
    );
    let triples: Vec<Triple<T>> = chunks.into_iter().flatten().collect();
    let reduced = combine.is_some() || triples.windows(2).all(|w| cmp_key(&w[0], &w[1]) == Ordering::Less);
    Ok(TripleList::from_parts_unchecked(nrows, ncols, triples, reduced))
}

/// Column cut points `c_0 = 0 < c_1 < ... < c_k = usize::MAX`, chosen from
/// evenly spaced samples of every run.
fn column_bounds<T>(runs: &[&[Triple<T>]], nparts: usize) -> Vec<usize> {
    let mut samples: Vec<usize> = Vec::new();
    if nparts > 1 {
        for run in runs.iter().filter(|r| !r.is_empty()) {
            for q in 1..nparts {
                samples.push(run[q * run.len() / nparts].col);
            }
        }
    }
    samples.sort_unstable();
    let mut bounds = vec![0usize];
    if !samples.is_empty() {
        for q in 1..nparts {
            let c = samples[q * samples.len() / nparts];
            if c > *bounds.last().unwrap() {
                bounds.push(c);
            }
        }
    }
    bounds.push(usize::MAX);
    bounds
}

fn merge_slices<T: Scalar>(slices: &[&[Triple<T>]], combine: Combine<'_, T>) -> Vec<Triple<T>> {
    let total: usize = slices.iter().map(|s| s.len()).sum();
    let mut out: Vec<Triple<T>> = Vec::with_capacity(total);
    let mut pos = vec![0usize; slices.len()];
    let mut heap: BinaryHeap<Reverse<(usize, usize, usize)>> = slices
        .iter()
        .enumerate()
        .filter(|(_, s)| !s.is_empty())
        .map(|(l, s)| Reverse((s[0].col, s[0].row, l)))
        .collect();
    while let Some(Reverse((_, _, l))) = heap.pop() {
        let t = slices[l][pos[l]];
        match (combine, out.last_mut()) {
            (Some(f), Some(last)) if last.key() == t.key() => last.value = f(last.value, t.value),
            _ => out.push(t),
        }
        pos[l] += 1;
        if let Some(next) = slices[l].get(pos[l]) {
            heap.push(Reverse((next.col, next.row, l)));
        }
    }
    out
}
