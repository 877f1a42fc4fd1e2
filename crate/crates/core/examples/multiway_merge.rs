//! Summing k sorted triple lists with a k-way heap merge.

use sparse_summa::kernels::{merge_sorted, multiway_merge};
use sparse_summa::matrix::{Triple, TripleList};
use sparse_summa::semiring::{MinSelect2nd, PlusTimes};

fn main() -> sparse_summa::Result<()> {
    let lists: Vec<TripleList<i64>> = (0..4)
        .map(|k| {
            let t = (0..6)
                .map(|e| Triple::new((e * 3 + k) % 5, (e + k) % 4, (k * 10 + e) as i64))
                .collect();
            TripleList::new(5, 4, t)
        })
        .collect::<Result<_, _>>()?;
    for (k, l) in lists.iter().enumerate() {
        println!("list {k}: {} triples", l.nnz());
    }

    let all = merge_sorted(&lists, 1)?;
    println!("concatenated: {} triples, reduced={}", all.nnz(), all.is_reduced());

    let sum = multiway_merge(&lists, &PlusTimes::new(), 2)?;
    let min = multiway_merge(&lists, &MinSelect2nd::new(), 2)?;
    println!("(+) merge: {} entries, (min) merge: {} entries", sum.nnz(), min.nnz());
    for (s, m) in sum.iter().zip(min.iter()).take(5) {
        println!("  ({}, {}): sum={} min={}", s.row, s.col, s.value, m.value);
    }
    Ok(())
}
