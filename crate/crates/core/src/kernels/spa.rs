use crate::error::{Error, Result};
use crate::matrix::{CscMatrix, Triple, TripleList};
use crate::semiring::Semiring;

/// Gustavson's column-wise product with a dense sparse accumulator (SPA).
///
/// Uses O(nrows) workspace and costs O(flops + nnz + nrows + ncols); it is
/// the serial reference every other multiply is checked against.
pub fn spa_spgemm<S: Semiring>(
    a: &CscMatrix<S::Scalar>,
    b: &CscMatrix<S::Scalar>,
    sr: &S,
) -> Result<TripleList<S::Scalar>> {
    spa_spgemm_counted(a, b, sr).map(|(c, _)| c)
}

/// As [`spa_spgemm`], also returning the number of scalar multiplications.
pub fn spa_spgemm_counted<S: Semiring>(
    a: &CscMatrix<S::Scalar>,
    b: &CscMatrix<S::Scalar>,
    sr: &S,
) -> Result<(TripleList<S::Scalar>, usize)> {
    if a.ncols() != b.nrows() {
        return Err(Error::dims(format!(
            "cannot multiply {}x{} by {}x{}",
            a.nrows(),
            a.ncols(),
            b.nrows(),
            b.ncols()
        )));
    }
    let mut spa: Vec<Option<S::Scalar>> = vec![None; a.nrows()];
    let mut occupied: Vec<usize> = Vec::new();
    let mut out = Vec::new();
    let mut flops = 0usize;
    for j in 0..b.ncols() {
        let (b_rows, b_vals) = b.column(j);
        for (&k, &b_kj) in b_rows.iter().zip(b_vals) {
            let (a_rows, a_vals) = a.column(k);
            for (&i, &a_ik) in a_rows.iter().zip(a_vals) {
                let prod = sr.multiply(a_ik, b_kj);
                flops += 1;
                spa[i] = Some(match spa[i] {
                    Some(acc) => sr.add(acc, prod),
                    None => {
                        occupied.push(i);
                        prod
                    }
                });
            }
        }
        occupied.sort_unstable();
        for &i in &occupied {
            out.push(Triple::new(i, j, spa[i].take().expect("occupied slot")));
        }
        occupied.clear();
    }
    Ok((TripleList::from_parts_unchecked(a.nrows(), b.ncols(), out, true), flops))
}
