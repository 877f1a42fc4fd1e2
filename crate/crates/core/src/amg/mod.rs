//! Aggregation-based restriction operators: sparse vectors and their
//! semiring products, distance-2 maximal independent sets, and the
//! restriction products RᵀA and RᵀAR.

mod mis2;
mod restriction;
mod vector;

pub use mis2::{mis2, mis2_with, Mis2Key};
pub use restriction::{build_restriction, build_restriction_with, restrict_products};
pub use vector::{ewise_add, ewise_mult, mask_out, mxv, SparseVector};
