//! Matrix Market round trip and a symmetric permutation.
//!
//!     cargo run --example matrix_market -- path/to/matrix.mtx

use sparse_summa::gen::{rmat_generate, RmatParams};
use sparse_summa::matrix::{random_symmetric_permute, read_matrix_market, write_matrix_market};

fn main() -> sparse_summa::Result<()> {
    let a = match std::env::args().nth(1) {
        Some(path) => read_matrix_market(path)?,
        None => rmat_generate(&RmatParams::ssca(8, 5))?,
    };
    println!("A: {}x{} nnz={}", a.nrows(), a.ncols(), a.nnz());

    let path = std::env::temp_dir().join("sparse_summa_example.mtx");
    write_matrix_market(&a, &path)?;
    let back = read_matrix_market(&path)?;
    println!("wrote {} and read it back: identical={}", path.display(), back == a);

    if a.nrows() == a.ncols() {
        let p = random_symmetric_permute(&a, 42)?;
        println!("PAPᵀ: nnz={} (same as A: {})", p.nnz(), p.nnz() == a.nnz());
    }
    std::fs::remove_file(&path)?;
    Ok(())
}
