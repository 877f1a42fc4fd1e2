//! R-MAT and Erdős–Rényi inputs with degree statistics.

use sparse_summa::gen::{er_generate, rmat_generate, RmatParams};
use sparse_summa::matrix::TripleList;

fn degrees(t: &TripleList<f64>) -> (usize, usize, usize) {
    let mut deg = vec![0usize; t.ncols()];
    for e in t.iter() {
        deg[e.col] += 1;
    }
    let empty = deg.iter().filter(|&&d| d == 0).count();
    (*deg.iter().max().unwrap_or(&0), empty, t.nnz())
}

fn main() -> sparse_summa::Result<()> {
    let scale = 12;
    let inputs = [
        ("g500", rmat_generate(&RmatParams::g500(scale, 1))?),
        ("ssca", rmat_generate(&RmatParams::ssca(scale, 1))?),
        ("er-rmat", rmat_generate(&RmatParams::er(scale, 1))?),
        ("gnp", er_generate(1 << scale, 16.0, 1)?),
    ];
    println!("{:>8} {:>8} {:>10} {:>12}", "input", "nnz", "max deg", "empty cols");
    for (name, t) in &inputs {
        let (max, empty, nnz) = degrees(t);
        println!("{name:>8} {nnz:>8} {max:>10} {empty:>12}");
    }
    Ok(())
}
