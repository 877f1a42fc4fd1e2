use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::amg::mis2::Graph;
use crate::amg::vector::{mxv, SparseVector};
use crate::engine::SpgemmEngine;
use crate::error::{Error, Result};
use crate::matrix::{DcscMatrix, Triple, TripleList};
use crate::semiring::{MinSelect2nd, PlusTimes, Scalar, Semiring};

/// Restriction operator with one column per MIS-2 vertex, in increasing
/// vertex order. Each member forms an aggregate with its neighbors (a
/// neighbor of several members joins the smallest-id one); every vertex left
/// over is assigned to a uniformly random aggregate. All values are 1.
pub fn build_restriction<T: Scalar, U: Scalar>(
    a: &DcscMatrix<T>,
    mis2set: &SparseVector<U>,
    seed: u64,
) -> Result<DcscMatrix<f64>> {
    build_restriction_with(a, mis2set, seed, false)
}

pub fn build_restriction_with<T: Scalar, U: Scalar>(
    a: &DcscMatrix<T>,
    mis2set: &SparseVector<U>,
    seed: u64,
    symmetrize: bool,
) -> Result<DcscMatrix<f64>> {
    let g = Graph::from_matrix(a, symmetrize)?;
    let n = g.n();
    if mis2set.len() != n {
        return Err(Error::dims(format!(
            "MIS-2 vector has length {} for a graph of {n} vertices",
            mis2set.len()
        )));
    }
    let members = mis2set.indices();
    if n > 0 && members.is_empty() {
        return Err(Error::contract("an empty MIS-2 cannot cover a nonempty graph"));
    }
    check_independent(&g, members)?;

    let ids = SparseVector::new(n, members.iter().map(|&v| (v, v)).collect())?;
    let nearest = mxv(&g.with_values(usize::MAX), &ids, &MinSelect2nd::new())?;
    let mut owner: Vec<Option<usize>> = vec![None; n];
    for (v, m) in nearest.iter() {
        owner[v] = Some(m);
    }
    for &m in members {
        owner[m] = Some(m);
    }
    let base = ChaCha8Rng::seed_from_u64(seed);
    let triples: Vec<Triple<f64>> = owner
        .iter()
        .enumerate()
        .map(|(v, o)| {
            let col = match o {
                Some(m) => members.binary_search(m).expect("owner is a member"),
                None => {
                    let mut rng = base.clone();
                    rng.set_stream(v as u64);
                    rng.random_range(0..members.len())
                }
            };
            Triple::new(v, col, 1.0)
        })
        .collect();
    DcscMatrix::from_triples(&TripleList::new(n, members.len(), triples)?)
}

/// No member may have another member within two hops. Counting walks:
/// with `c1 = A·m`, a member needs `c1 = 0` and `(A·c1)[v] = deg(v)`.
fn check_independent(g: &Graph, members: &[usize]) -> Result<()> {
    let n = g.n();
    let count = PlusTimes::<u64>::new();
    let adj = g.with_values(1u64);
    let m = SparseVector::new(n, members.iter().map(|&v| (v, 1u64)).collect())?;
    let c1 = mxv(&adj, &m, &count)?;
    let c2 = mxv(&adj, &c1, &count)?;
    for &v in members {
        let deg = adj.column(v).map_or(0, |(rows, _)| rows.len()) as u64;
        if c1.get(v).is_some() || c2.get(v).unwrap_or(0) != deg {
            return Err(Error::contract(format!(
                "vertex {v} has another MIS-2 member within distance 2"
            )));
        }
    }
    Ok(())
}

/// (RᵀA, RᵀAR) on the given engine. Rᵀ is formed by swapping indices and
/// re-sorting.
pub fn restrict_products<S, E>(
    a: &TripleList<S::Scalar>,
    r: &TripleList<S::Scalar>,
    engine: &E,
) -> Result<(TripleList<S::Scalar>, TripleList<S::Scalar>)>
where
    S: Semiring,
    E: SpgemmEngine<S> + ?Sized,
{
    if r.nrows() != a.nrows() || a.nrows() != a.ncols() {
        return Err(Error::dims(format!(
            "restriction {}x{} does not fit a {}x{} matrix",
            r.nrows(),
            r.ncols(),
            a.nrows(),
            a.ncols()
        )));
    }
    let rta = engine.multiply(&r.transpose(), a)?;
    let rtar = engine.multiply(&rta, r)?;
    Ok((rta, rtar))
}
