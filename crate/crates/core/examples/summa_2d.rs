//! Sparse SUMMA on a 3x3 in-process grid, with per-process counters.

use sparse_summa::gen::{rmat_generate, RmatParams};
use sparse_summa::semiring::PlusTimes;
use sparse_summa::spgemm3d::Blocking;
use sparse_summa::summa2d::{distribute_2d, summa_2d, Summa2DConfig};

fn main() -> sparse_summa::Result<()> {
    let a = rmat_generate(&RmatParams::g500(9, 3))?.map_values(|v| v as i64);
    let (pr, pc) = (3, 3);
    let blocks = distribute_2d(&a, pr, pc)?;
    let cfg = Summa2DConfig::new(pr, pc, Blocking::Width(32), 1, PlusTimes::<i64>::new())?;
    let run = summa_2d(&blocks, &blocks, &cfg)?;

    println!("C = A*A: nnz={} flops={}", run.c_nnz(), run.flops());
    for s in &run.stats {
        println!(
            "P{:?}: stages={} bcast calls={} sent={}B received={}B local nnz={}",
            s.coords,
            s.stages,
            s.counters.bcast.calls,
            s.counters.bcast.bytes_sent,
            s.counters.bcast.bytes_received,
            s.c_nnz
        );
    }
    let c = run.gather()?;
    println!("gathered {}x{} with {} nonzeros", c.nrows(), c.ncols(), c.nnz());
    Ok(())
}
