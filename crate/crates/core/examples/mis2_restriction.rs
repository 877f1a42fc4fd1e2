//! AMG coarsening: MIS-2 aggregates, the restriction R, and RᵀAR computed
//! on a distributed engine.

use sparse_summa::amg::{build_restriction, mis2, restrict_products};
use sparse_summa::engine::Split3DEngine;
use sparse_summa::grid::GridShape;
use sparse_summa::matrix::{DcscMatrix, Triple, TripleList};
use sparse_summa::semiring::PlusTimes;
use sparse_summa::spgemm3d::{Blocking, Split3DConfig};

/// 5-point Laplacian on a w x w grid.
fn laplacian(w: usize) -> sparse_summa::Result<TripleList<f64>> {
    let mut t = Vec::new();
    for y in 0..w {
        for x in 0..w {
            let v = y * w + x;
            t.push(Triple::new(v, v, 4.0));
            if x + 1 < w {
                t.extend([Triple::new(v, v + 1, -1.0), Triple::new(v + 1, v, -1.0)]);
            }
            if y + 1 < w {
                t.extend([Triple::new(v, v + w, -1.0), Triple::new(v + w, v, -1.0)]);
            }
        }
    }
    TripleList::new(w * w, w * w, t)
}

fn main() -> sparse_summa::Result<()> {
    let a = laplacian(32)?;
    let d = DcscMatrix::from_triples(&a)?;
    let set = mis2(&d, 7)?;
    let rounds = set.values().iter().max().map_or(0, |r| r + 1);
    println!(
        "A: {} vertices; MIS-2 picked {} in {rounds} rounds",
        a.nrows(),
        set.nnz()
    );

    let r = build_restriction(&d, &set, 7)?.to_triples();
    println!("R: {}x{}", r.nrows(), r.ncols());

    let cfg = Split3DConfig::new(
        GridShape::new(2, 2, 2)?,
        Blocking::Width(16),
        1,
        PlusTimes::<f64>::new(),
    )?;
    let (rta, rtar) = restrict_products(&a, &r, &Split3DEngine { cfg })?;
    println!(
        "RᵀA: nnz={}  RᵀAR: {}x{} nnz={}",
        rta.nnz(),
        rtar.nrows(),
        rtar.ncols(),
        rtar.nnz()
    );
    // Rows of A sum to zero in the interior; the Galerkin operator keeps the
    // total.
    let total = |m: &TripleList<f64>| m.iter().map(|e| e.value).sum::<f64>();
    println!("sum(A)={} sum(RᵀAR)={}", total(&a), total(&rtar));
    Ok(())
}
