pub mod amg;
pub mod bench;
pub mod dist;
pub mod engine;
pub mod error;
pub mod gen;
pub mod grid;
pub mod kernels;
pub mod matrix;
pub mod semiring;
pub mod spgemm3d;
pub mod summa2d;

pub use error::{Error, Result};
