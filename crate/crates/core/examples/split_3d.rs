//! Split-3D SpGEMM at p = 16 with 1, 2 and 4 layers: broadcast volume falls
//! and all-to-all volume grows as layers are added.
//!
//!     cargo run --release --example split_3d -- 11

use sparse_summa::engine::Split3DEngine;
use sparse_summa::gen::{rmat_generate, RmatParams};
use sparse_summa::grid::GridShape;
use sparse_summa::semiring::PlusTimes;
use sparse_summa::spgemm3d::{cint_expansion_ratio, Blocking, Split3DConfig};

fn main() -> sparse_summa::Result<()> {
    let scale = std::env::args().nth(1).map_or(10, |s| s.parse().expect("scale"));
    let a = rmat_generate(&RmatParams::g500(scale, 1))?;
    println!("A: g500 scale {scale}, nnz={}", a.nnz());
    println!(
        "{:>7} {:>8} {:>12} {:>12} {:>10} {:>9}",
        "grid", "stages", "bcast B", "a2a B", "nnz(Cint)", "expand"
    );

    let mut reference = None;
    // 4x2x2 has non-square layers, so it needs the rectangular constructor.
    for (pr, pc, pl) in [(4, 4, 1), (4, 2, 2), (2, 2, 4)] {
        let shape = GridShape::new(pr, pc, pl)?;
        let cfg = Split3DConfig::rectangular(shape, Blocking::Width(64), 2, PlusTimes::<f64>::new())?;
        let run = Split3DEngine { cfg }.run(&a, &a)?;
        let counters = run.counters();
        println!(
            "{:>7} {:>8} {:>12} {:>12} {:>10} {:>9.3}",
            shape.to_string(),
            run.stats[0].stages,
            counters.bcast.bytes_sent,
            counters.alltoall.bytes_sent,
            run.cint_nnz(),
            cint_expansion_ratio(&run)?
        );
        let c = run.gather()?;
        match &reference {
            None => reference = Some(c),
            Some(r) => assert_eq!(r, &c),
        }
    }
    Ok(())
}
