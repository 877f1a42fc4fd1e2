//! Sparse matrix storage: sorted triple lists, CSC, DCSC, Matrix Market
//! I/O and symmetric relabeling.

mod csc;
mod dcsc;
mod market;
mod permute;
mod triples;

pub use csc::CscMatrix;
pub use dcsc::DcscMatrix;
pub use market::{read_matrix_market, read_matrix_market_from, write_matrix_market, write_matrix_market_to};
pub use permute::{permute_symmetric, random_permutation, random_symmetric_permute};
pub use triples::{Triple, TripleList};

pub(crate) use triples::cmp_key;
