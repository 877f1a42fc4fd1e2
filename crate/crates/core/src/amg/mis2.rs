use rand::distr::Open01;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::amg::vector::{ewise_add, ewise_mult, mask_out, mxv, SparseVector};
use crate::error::{Error, Result};
use crate::matrix::{DcscMatrix, Triple, TripleList};
use crate::semiring::{Bounded, MinSelect2nd, Scalar};

/// Random priority of a candidate vertex. Ties in `value` fall back to the
/// vertex id, so all keys are distinct.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct Mis2Key {
    pub value: f64,
    pub vertex: usize,
}

impl Bounded for Mis2Key {
    fn max_value() -> Self {
        Mis2Key {
            value: f64::INFINITY,
            vertex: usize::MAX,
        }
    }
}

/// Off-diagonal nonzero pattern of a square matrix, read as an undirected
/// graph.
#[derive(Clone, Debug)]
pub(crate) struct Graph {
    pub(crate) adj: DcscMatrix<()>,
}

impl Graph {
    pub(crate) fn from_matrix<T: Scalar>(a: &DcscMatrix<T>, symmetrize: bool) -> Result<Self> {
        if a.nrows() != a.ncols() {
            return Err(Error::dims(format!("adjacency matrix is {}x{}", a.nrows(), a.ncols())));
        }
        let n = a.nrows();
        let edges: Vec<Triple<()>> = a
            .to_triples()
            .iter()
            .filter(|t| t.row != t.col)
            .map(|t| Triple::new(t.row, t.col, ()))
            .collect();
        let pattern = TripleList::from_sorted(n, n, edges)?;
        let transposed = pattern.transpose();
        let pattern = if pattern.triples() == transposed.triples() {
            pattern
        } else if symmetrize {
            let both = pattern
                .into_triples()
                .into_iter()
                .chain(transposed.into_triples())
                .collect();
            TripleList::new(n, n, both)?.sum_duplicates_with(|_, _| ())
        } else {
            return Err(Error::contract("MIS-2 needs a structurally symmetric matrix"));
        };
        Ok(Graph {
            adj: DcscMatrix::from_triples(&pattern)?,
        })
    }

    pub(crate) fn n(&self) -> usize {
        self.adj.nrows()
    }

    pub(crate) fn with_values<U: Scalar>(&self, v: U) -> DcscMatrix<U> {
        self.adj.map_values(|_| v)
    }
}

fn priority(seed: u64, iteration: u64, vertex: usize) -> Mis2Key {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&iteration.to_le_bytes());
    let mut rng = ChaCha8Rng::from_seed(key);
    rng.set_stream(vertex as u64);
    Mis2Key {
        value: rng.sample(Open01),
        vertex,
    }
}

/// Distance-2 maximal independent set of the undirected graph given by the
/// off-diagonal pattern of `a`, which must be structurally symmetric. The
/// result's values are the round in which each vertex was selected.
pub fn mis2<T: Scalar>(a: &DcscMatrix<T>, seed: u64) -> Result<SparseVector<u32>> {
    mis2_with(a, seed, false)
}

/// [`mis2`], optionally symmetrizing the pattern instead of rejecting an
/// asymmetric one.
pub fn mis2_with<T: Scalar>(a: &DcscMatrix<T>, seed: u64, symmetrize: bool) -> Result<SparseVector<u32>> {
    let g = Graph::from_matrix(a, symmetrize)?;
    let n = g.n();
    let adj = g.with_values(Mis2Key::max_value());
    let sr = MinSelect2nd::<Mis2Key>::new();
    let mut cands: SparseVector<()> = SparseVector::full(n, |_| ());
    let mut selected: SparseVector<u32> = SparseVector::empty(n);
    let mut round = 0u32;
    while !cands.is_empty() {
        let keyed = cands.apply(|v, _| priority(seed, round as u64, v));
        let minadj1 = mxv(&adj, &keyed, &sr)?;
        let minadj2 = mxv(&adj, &minadj1, &sr)?;
        let minadj = ewise_add(&minadj1, &minadj2, |x, y| if y < x { y } else { x })?;
        // The 2-hop minimum includes the vertex itself whenever it has a
        // neighbor, so a winner compares equal; a vertex with no candidate
        // within distance 2 is absent from minadj and wins outright.
        let beaten = ewise_mult(&keyed, &minadj, |own, m| own > m)?;
        let new_s = mask_out(
            &keyed,
            &SparseVector::new(n, beaten.iter().filter(|(_, b)| *b).collect())?,
        )?;
        if new_s.is_empty() {
            return Err(Error::contract("MIS-2 round selected no vertex"));
        }
        cands = mask_out(&cands, &new_s)?;
        let adj1 = mxv(&adj, &new_s, &sr)?;
        let adj2 = mxv(&adj, &adj1, &sr)?;
        let new_s_adj = ewise_add(&adj1, &adj2, |x, _| x)?;
        cands = mask_out(&cands, &new_s_adj)?;
        let r = round;
        selected = ewise_add(&selected, &new_s.apply(|_, _| r), |x, _| x)?;
        round += 1;
    }
    Ok(selected)
}
