//! Local multiply: heap kernel over DCSC, checked against the SPA kernel.
//!
//!     cargo run --release --example heap_spgemm -- 12 4

use sparse_summa::gen::{rmat_generate, RmatParams};
use sparse_summa::kernels::{heap_spgemm_with_stats, spa_spgemm};
use sparse_summa::matrix::{CscMatrix, DcscMatrix};
use sparse_summa::semiring::PlusTimes;

fn main() -> sparse_summa::Result<()> {
    let mut args = std::env::args()
        .skip(1)
        .map(|s| s.parse::<usize>().expect("numeric argument"));
    let scale = args.next().unwrap_or(10) as u32;
    let threads = args.next().unwrap_or(4);

    let a = rmat_generate(&RmatParams::g500(scale, 1))?;
    let d = DcscMatrix::from_triples(&a)?;
    println!(
        "A: {}x{} nnz={} nonempty columns={}",
        d.nrows(),
        d.ncols(),
        d.nnz(),
        d.nzc()
    );

    let sr = PlusTimes::<f64>::new();
    let start = std::time::Instant::now();
    let (c, stats) = heap_spgemm_with_stats(&d, &d, &sr, threads)?;
    println!(
        "A*A: nnz={} flops={} peak heap={} ({:.2?} on {threads} threads)",
        c.nnz(),
        stats.flops,
        stats.peak_heap_entries,
        start.elapsed()
    );

    let csc = CscMatrix::from_triples(&a)?;
    assert_eq!(spa_spgemm(&csc, &csc, &sr)?, c);
    println!("matches the SPA kernel");
    Ok(())
}
