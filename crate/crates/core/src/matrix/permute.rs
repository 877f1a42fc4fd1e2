use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::{Triple, TripleList};
use crate::semiring::Scalar;

/// Seeded uniform permutation of `0..n` (Fisher–Yates over ChaCha8).
pub fn random_permutation(n: usize, seed: u64) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    perm
}

/// Relabels rows and columns by `perm`: entry (i, j) moves to
/// (perm[i], perm[j]), i.e. the result is P·A·Pᵀ.
pub fn permute_symmetric<T: Scalar>(t: &TripleList<T>, perm: &[usize]) -> Result<TripleList<T>> {
    if t.nrows() != t.ncols() {
        return Err(Error::dims(format!(
            "symmetric permutation needs a square matrix, got {}x{}",
            t.nrows(),
            t.ncols()
        )));
    }
    if perm.len() != t.nrows() {
        return Err(Error::dims("permutation length differs from matrix dimension"));
    }
    let mut seen = vec![false; perm.len()];
    for &p in perm {
        if p >= perm.len() || std::mem::replace(&mut seen[p], true) {
            return Err(Error::contract("not a permutation"));
        }
    }
    let triples = t
        .iter()
        .map(|tr| Triple::new(perm[tr.row], perm[tr.col], tr.value))
        .collect();
    TripleList::new(t.nrows(), t.ncols(), triples)
}

/// P·A·Pᵀ for the permutation drawn from `seed`.
pub fn random_symmetric_permute<T: Scalar>(t: &TripleList<T>, seed: u64) -> Result<TripleList<T>> {
    if t.nrows() != t.ncols() {
        return Err(Error::dims(format!(
            "symmetric permutation needs a square matrix, got {}x{}",
            t.nrows(),
            t.ncols()
        )));
    }
    permute_symmetric(t, &random_permutation(t.nrows(), seed))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> TripleList<f64> {
        TripleList::new(
            4,
            4,
            vec![Triple::new(0, 1, 1.0), Triple::new(3, 2, 2.0), Triple::new(2, 2, 0.0)],
        )
        .unwrap()
    }

    #[test]
    fn identity_permutation_is_noop() {
        let t = sample();
        assert_eq!(permute_symmetric(&t, &[0, 1, 2, 3]).unwrap(), t);
    }

    #[test]
    fn seeded_permutation_is_deterministic() {
        let t = sample();
        assert_eq!(
            random_symmetric_permute(&t, 9).unwrap(),
            random_symmetric_permute(&t, 9).unwrap()
        );
        let mut p = random_permutation(100, 3);
        p.sort_unstable();
        assert_eq!(p, (0..100).collect::<Vec<_>>());
    }

    #[test]
    fn non_square_rejected() {
        let t = TripleList::<f64>::empty(2, 3);
        assert!(random_symmetric_permute(&t, 1).is_err());
    }

    #[test]
    fn invalid_permutation_rejected() {
        assert!(permute_symmetric(&sample(), &[0, 0, 1, 2]).is_err());
        assert!(permute_symmetric(&sample(), &[0, 1, 2]).is_err());
    }
}
