//! Split-3D-SpGEMM: Sparse SUMMA on every layer of a `pr × pc × pl` grid
//! over a slice of the inner dimension, followed by an all-to-all of the
//! partial products along fibers and a local merge.
//!
//! Inputs and output use the [`crate::dist`] layout, so nothing is
//! replicated. Layer `k` handles the inner indices in the `k`-th slice of
//! every column block of A. With `pr == pc` the stage schedule is the usual
//! `pr` outer stages of `locinndim / b` inner stages each. With `pr != pc`
//! (only through [`Split3DConfig::rectangular`]) the layer's inner index set
//! is additionally cut wherever B's row blocks change owner.

use std::ops::Range;
use std::time::{Duration, Instant};

use crate::dist::{block_range, offset_range, owned_ranges, SplitBlock};
use crate::error::{Error, Result};
use crate::grid::{in_process_grid, run_grid, CommCounters, CommKind, GridShape, ProcessCtx};
use crate::kernels::{heap_spgemm_with_stats, merge_sorted, multiway_merge};
use crate::matrix::{DcscMatrix, Triple, TripleList};
use crate::semiring::{Semiring, WireScalar};

/// Inner indices broadcast per stage.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Blocking {
    /// The whole local inner dimension in one stage per owner.
    Full,
    Width(usize),
}

impl Blocking {
    fn width(self) -> Result<usize> {
        match self {
            Blocking::Full => Ok(usize::MAX),
            Blocking::Width(0) => Err(Error::config("blocking parameter b must be at least 1")),
            Blocking::Width(b) => Ok(b),
        }
    }
}

impl std::fmt::Display for Blocking {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Blocking::Full => write!(f, "full"),
            Blocking::Width(b) => write!(f, "{b}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Split3DConfig<S> {
    pub shape: GridShape,
    pub blocking: Blocking,
    pub nthreads: usize,
    pub semiring: S,
    /// Reduce repeated indices of C^int before the fiber all-to-all instead
    /// of only after it.
    pub pre_reduce: bool,
}

impl<S: Semiring> Split3DConfig<S> {
    /// Grid with square layers.
    pub fn new(shape: GridShape, blocking: Blocking, nthreads: usize, semiring: S) -> Result<Self> {
        if !shape.is_square_layer() {
            return Err(Error::config(format!(
                "grid {shape} has non-square layers; use Split3DConfig::rectangular"
            )));
        }
        Self::rectangular(shape, blocking, nthreads, semiring)
    }

    /// The `√(p/c) × √(p/c) × c` grid.
    pub fn square(p: usize, c: usize, blocking: Blocking, nthreads: usize, semiring: S) -> Result<Self> {
        Self::new(GridShape::square(p, c)?, blocking, nthreads, semiring)
    }

    /// Any grid, including `pr != pc`.
    pub fn rectangular(shape: GridShape, blocking: Blocking, nthreads: usize, semiring: S) -> Result<Self> {
        blocking.width()?;
        if nthreads == 0 {
            return Err(Error::config("thread count must be at least 1"));
        }
        Ok(Split3DConfig {
            shape,
            blocking,
            nthreads,
            semiring,
            pre_reduce: false,
        })
    }

    pub fn with_pre_reduce(mut self, on: bool) -> Self {
        self.pre_reduce = on;
        self
    }
}

/// Wall time per phase on one process.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct PhaseTimes {
    pub broadcast: Duration,
    pub alltoall: Duration,
    pub local_multiply: Duration,
    pub merge_layer: Duration,
    pub merge_fiber: Duration,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ProcessStats {
    pub coords: (usize, usize, usize),
    pub phases: PhaseTimes,
    pub counters: CommCounters,
    /// SUMMA stages executed (each is one A and one B broadcast).
    pub stages: usize,
    pub flops: usize,
    /// Triples this process handed to the C all-to-all, its own share
    /// included.
    pub cint_nnz: usize,
    /// Nonzeros of this process's block of C.
    pub c_nnz: usize,
}

/// Output of a distributed multiply: C in the [`crate::dist`] layout plus
/// per-process instrumentation, both in rank order.
#[derive(Clone, Debug)]
pub struct Split3DRun<T> {
    pub shape: GridShape,
    pub blocks: Vec<SplitBlock<T>>,
    pub stats: Vec<ProcessStats>,
}

impl<T: WireScalar> Split3DRun<T> {
    pub fn gather(&self) -> Result<TripleList<T>> {
        crate::dist::gather(&self.blocks)
    }

    pub fn flops(&self) -> usize {
        self.stats.iter().map(|s| s.flops).sum()
    }

    pub fn cint_nnz(&self) -> usize {
        self.stats.iter().map(|s| s.cint_nnz).sum()
    }

    pub fn c_nnz(&self) -> usize {
        self.stats.iter().map(|s| s.c_nnz).sum()
    }

    pub fn counters(&self) -> CommCounters {
        CommCounters::total(self.stats.iter().map(|s| &s.counters))
    }
}

/// nnz(C^int) / nnz(C). Fails with [`Error::Bound`] if the measured ratio
/// exceeds flops / nnz(C). An empty product has ratio 1.
pub fn cint_expansion_ratio<T: WireScalar>(run: &Split3DRun<T>) -> Result<f64> {
    let (cint, c, flops) = (run.cint_nnz(), run.c_nnz(), run.flops());
    if c == 0 {
        return Ok(1.0);
    }
    if cint > flops || cint < c {
        return Err(Error::Bound(format!(
            "nnz(C^int) = {cint} outside [nnz(C), flops] = [{c}, {flops}]"
        )));
    }
    Ok(cint as f64 / c as f64)
}

/// Runs the algorithm on an in-process grid, one thread per process.
pub fn split_3d_spgemm<S>(
    a: &[SplitBlock<S::Scalar>],
    b: &[SplitBlock<S::Scalar>],
    cfg: &Split3DConfig<S>,
) -> Result<Split3DRun<S::Scalar>>
where
    S: Semiring,
    S::Scalar: WireScalar,
{
    let p = cfg.shape.size();
    if a.len() != p || b.len() != p {
        return Err(Error::config(format!(
            "grid {} needs {p} blocks of each input, got {} and {}",
            cfg.shape,
            a.len(),
            b.len()
        )));
    }
    let inputs: Vec<_> = a.iter().zip(b).collect();
    let out = run_grid(in_process_grid(cfg.shape), inputs, |ctx, (a, b)| {
        split_3d_process(ctx, a, b, cfg)
    })?;
    let (blocks, stats) = out
        .into_iter()
        .map(|((block, mut stats), counters)| {
            stats.counters = counters;
            (block, stats)
        })
        .unzip();
    Ok(Split3DRun {
        shape: cfg.shape,
        blocks,
        stats,
    })
}

/// One inner-index range broadcast in a single SUMMA stage.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Stage {
    inner: Range<usize>,
    /// Process column owning these columns of A.
    a_root: usize,
    /// Process row owning these rows of B.
    b_root: usize,
}

/// Inner indices handled by layer `k`: the `k`-th slice of each of A's
/// column blocks, in order.
fn layer_slices(l: usize, shape: GridShape, k: usize) -> Vec<(usize, Range<usize>)> {
    (0..shape.pc)
        .map(|r| (r, offset_range(block_range(l, shape.pc, r), shape.pl, k)))
        .collect()
}

fn intersect(a: &Range<usize>, b: &Range<usize>) -> Range<usize> {
    a.start.max(b.start)..a.end.min(b.end).max(a.start.max(b.start))
}

fn stage_schedule(l: usize, shape: GridShape, k: usize, width: usize) -> Vec<Stage> {
    let mut stages = Vec::new();
    for (a_root, slice) in layer_slices(l, shape, k) {
        for b_root in 0..shape.pr {
            let piece = intersect(&slice, &block_range(l, shape.pr, b_root));
            let mut lo = piece.start;
            while lo < piece.end {
                let hi = piece.end.min(lo.saturating_add(width));
                stages.push(Stage {
                    inner: lo..hi,
                    a_root,
                    b_root,
                });
                lo = hi;
            }
        }
    }
    stages
}

fn check_block<T: crate::semiring::Scalar>(
    blk: &SplitBlock<T>,
    name: &str,
    shape: GridShape,
    coords: (usize, usize, usize),
) -> Result<()> {
    let (rows, cols) = owned_ranges(blk.global.0, blk.global.1, shape, coords);
    if blk.coords != coords
        || blk.row_offset != rows.start
        || blk.col_offset != cols.start
        || blk.matrix.shape() != (rows.len(), cols.len())
    {
        return Err(Error::contract(format!(
            "block of {name} handed to P{coords:?} does not match the grid {shape} layout"
        )));
    }
    Ok(())
}

/// The per-process body of Split-3D-SpGEMM. Every process of the grid must
/// call it collectively with its own blocks of A and B.
pub fn split_3d_process<S>(
    ctx: &mut ProcessCtx,
    a: &SplitBlock<S::Scalar>,
    b: &SplitBlock<S::Scalar>,
    cfg: &Split3DConfig<S>,
) -> Result<(SplitBlock<S::Scalar>, ProcessStats)>
where
    S: Semiring,
    S::Scalar: WireScalar,
{
    let shape = ctx.shape();
    if shape != cfg.shape {
        return Err(Error::config(format!(
            "process grid {shape} differs from configured {}",
            cfg.shape
        )));
    }
    let (i, j, k) = ctx.coords();
    let ((m, l), (l_b, n)) = (a.global, b.global);
    if l != l_b {
        return Err(Error::dims(format!("cannot multiply {m}x{l} by {l_b}x{n}")));
    }
    check_block(a, "A", shape, (i, j, k))?;
    check_block(b, "B", shape, (i, j, k))?;
    let width = cfg.blocking.width()?;
    let sr = &cfg.semiring;
    let nt = cfg.nthreads;
    let mut stats = ProcessStats {
        coords: (i, j, k),
        ..Default::default()
    };

    // Redistribute B across the fiber: afterwards this process holds the
    // rows of its B row block that fall into layer k's inner slices, over
    // all columns of column block j, transposed so inner indices are columns.
    let col_block = block_range(n, shape.pc, j);
    let n_j = col_block.len();
    let t0 = Instant::now();
    let bt = b.matrix.transpose();
    let shift = b.col_offset - col_block.start;
    let outgoing: Vec<TripleList<S::Scalar>> = (0..shape.pl)
        .map(|dest| {
            let mut triples = Vec::new();
            for (_, slice) in layer_slices(l, shape, dest) {
                let local = intersect(&slice, &(b.row_offset..b.row_offset + b.matrix.nrows()));
                let lo = bt.lower_bound(local.start - b.row_offset);
                let hi = bt.lower_bound(local.end - b.row_offset);
                for kk in lo..hi {
                    let (r, cols, vals) = bt.column_at(kk);
                    for (&c, &v) in cols.iter().zip(vals) {
                        triples.push(Triple::new(c + shift, r + b.row_offset, v));
                    }
                }
            }
            TripleList::from_sorted(n_j, l, triples)
        })
        .collect::<Result<_>>()?;
    let received = ctx.alltoall(CommKind::Fiber, outgoing)?;
    let b_hat = DcscMatrix::from_triples(&merge_sorted(&received, nt)?)?;
    stats.phases.alltoall += t0.elapsed();

    let row_block = block_range(m, shape.pr, i);
    let mut partials: Vec<TripleList<S::Scalar>> = Vec::new();
    for stage in stage_schedule(l, shape, k, width) {
        let t = Instant::now();
        let a_piece = if j == stage.a_root {
            Some(
                a.matrix
                    .extract_columns(stage.inner.start - a.col_offset, stage.inner.end - a.col_offset)?,
            )
        } else {
            None
        };
        let a_rem = ctx.bcast(CommKind::Row, stage.a_root, a_piece)?;
        let b_piece = if i == stage.b_root {
            Some(b_hat.extract_columns(stage.inner.start, stage.inner.end)?.transpose())
        } else {
            None
        };
        let b_rem = ctx.bcast(CommKind::Column, stage.b_root, b_piece)?;
        stats.phases.broadcast += t.elapsed();
        stats.stages += 1;

        let t = Instant::now();
        let (part, hs) = heap_spgemm_with_stats(&a_rem, &b_rem, sr, nt)?;
        stats.flops += hs.flops;
        if !part.is_empty() {
            partials.push(part);
        }
        stats.phases.local_multiply += t.elapsed();
    }

    // Pack C^int by destination layer.
    let t = Instant::now();
    let merged = if partials.is_empty() {
        TripleList::empty(row_block.len(), n_j)
    } else if cfg.pre_reduce {
        multiway_merge(&partials, sr, nt)?
    } else {
        merge_sorted(&partials, nt)?
    };
    drop(partials);
    stats.cint_nnz = merged.nnz();
    let outgoing: Vec<TripleList<S::Scalar>> = (0..shape.pl)
        .map(|dest| {
            let cols = offset_range(0..n_j, shape.pl, dest);
            let span = merged.column_span(cols.start, cols.end);
            let triples = merged.triples()[span]
                .iter()
                .map(|t| Triple::new(t.row, t.col - cols.start, t.value))
                .collect();
            TripleList::from_sorted(row_block.len(), cols.len(), triples)
        })
        .collect::<Result<_>>()?;
    drop(merged);
    stats.phases.merge_layer += t.elapsed();

    let t = Instant::now();
    let received = ctx.alltoall(CommKind::Fiber, outgoing)?;
    stats.phases.alltoall += t.elapsed();

    let t = Instant::now();
    let c = multiway_merge(&received, sr, nt)?;
    stats.phases.merge_fiber += t.elapsed();
    stats.c_nnz = c.nnz();

    let (rows, cols) = owned_ranges(m, n, shape, (i, j, k));
    Ok((
        SplitBlock {
            coords: (i, j, k),
            global: (m, n),
            row_offset: rows.start,
            col_offset: cols.start,
            matrix: DcscMatrix::from_triples(&c)?,
        },
        stats,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::distribute_3d;
    use crate::semiring::PlusTimes;

    fn diag(n: usize) -> TripleList<i64> {
        TripleList::new(n, n, (0..n).map(|i| Triple::new(i, i, i as i64 + 1)).collect()).unwrap()
    }

    #[test]
    fn square_schedule_counts() {
        let shape = GridShape::new(2, 2, 2).unwrap();
        let s = stage_schedule(1024, shape, 1, 64);
        assert_eq!(s.len(), 8);
        assert_eq!(s[0].inner, 256..320);
        assert!(s.iter().all(|st| st.a_root == st.b_root));
        assert_eq!(stage_schedule(1024, shape, 0, usize::MAX).len(), 2);
    }

    #[test]
    fn rectangular_schedule_covers_slice_once() {
        let shape = GridShape::new(4, 2, 2).unwrap();
        for k in 0..2 {
            let s = stage_schedule(100, shape, k, 7);
            let mut covered: Vec<usize> = s.iter().flat_map(|st| st.inner.clone()).collect();
            covered.sort_unstable();
            let expect: Vec<usize> = layer_slices(100, shape, k).into_iter().flat_map(|(_, r)| r).collect();
            assert_eq!(covered, expect);
            for st in &s {
                assert!(block_range(100, 4, st.b_root).contains(&st.inner.start));
                assert!(block_range(100, 2, st.a_root).contains(&(st.inner.end - 1)));
            }
        }
    }

    #[test]
    fn diagonal_product_has_unit_expansion() {
        let n = 16;
        let shape = GridShape::new(2, 2, 2).unwrap();
        let cfg = Split3DConfig::new(shape, Blocking::Width(3), 1, PlusTimes::new()).unwrap();
        let a = distribute_3d(&diag(n), shape).unwrap();
        let run = split_3d_spgemm(&a, &a, &cfg).unwrap();
        let c = run.gather().unwrap();
        let expect: Vec<i64> = (0..n as i64).map(|i| (i + 1) * (i + 1)).collect();
        assert_eq!(c.iter().map(|t| t.value).collect::<Vec<_>>(), expect);
        assert_eq!(cint_expansion_ratio(&run).unwrap(), 1.0);
    }

    #[test]
    fn config_validation() {
        let sr = PlusTimes::<i64>::new();
        assert!(Split3DConfig::square(16, 2, Blocking::Full, 1, sr).is_err());
        assert!(Split3DConfig::new(GridShape::new(4, 2, 2).unwrap(), Blocking::Full, 1, sr).is_err());
        assert!(Split3DConfig::rectangular(GridShape::new(4, 2, 2).unwrap(), Blocking::Full, 1, sr).is_ok());
        assert!(Split3DConfig::square(8, 2, Blocking::Width(0), 1, sr).is_err());
        assert!(Split3DConfig::square(4, 1, Blocking::Full, 0, sr).is_err());
    }

    #[test]
    fn misplaced_block_rejected() {
        let shape = GridShape::new(2, 2, 1).unwrap();
        let cfg = Split3DConfig::new(shape, Blocking::Full, 1, PlusTimes::new()).unwrap();
        let mut a = distribute_3d(&diag(4), shape).unwrap();
        a.swap(0, 1);
        let b = distribute_3d(&diag(4), shape).unwrap();
        assert!(matches!(split_3d_spgemm(&a, &b, &cfg), Err(Error::Contract(_))));
    }
}
