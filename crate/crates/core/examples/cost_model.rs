//! Evaluating the alpha-beta communication model over (p, c, b).

use sparse_summa::bench::{model_csv, model_sweep, ModelSweep};
use sparse_summa::grid::{model_total_comm, CostParams, ModelInputs};

fn main() -> sparse_summa::Result<()> {
    // Roughly a scale-22 G500 square: 16 nonzeros per row, 256 flops per row.
    let n = 4_194_304.0;
    let params = CostParams::new(2e-6, 1e-9)?;
    let m = ModelInputs {
        nnz_a: 16.0 * n,
        nnz_b: 16.0 * n,
        flops: 256.0 * n,
        p: 4096.0,
        c: 16.0,
        b: 1024.0,
        n,
    };
    let r = model_total_comm(&m, &params)?;
    println!("p=4096 c=16 b=1024");
    println!("  B redistribution {:.4} s", r.b_redistribution.total());
    println!("  A broadcast      {:.4} s", r.a_broadcast.total());
    println!("  B broadcast      {:.4} s", r.b_broadcast.total());
    println!("  C exchange       {:.4} s", r.c_exchange.total());

    let rows = model_sweep(&ModelSweep {
        nnz_a: m.nnz_a,
        nnz_b: m.nnz_b,
        flops: m.flops,
        n,
        params,
        p: vec![1024, 4096, 16384],
        c: vec![1, 4, 16, 64],
        b: vec![256, 4096],
    })?;
    print!("{}", model_csv(&rows));
    Ok(())
}
