//! Sparse SUMMA on a single `pr × pc` layer.
//!
//! This is the one-layer case of [`crate::spgemm3d`]: both fiber
//! all-to-alls degenerate to local moves and cost nothing.

use crate::dist::SplitBlock;
use crate::error::Result;
use crate::grid::GridShape;
use crate::semiring::{Semiring, WireScalar};
use crate::spgemm3d::{split_3d_spgemm, Blocking, Split3DConfig, Split3DRun};

pub use crate::dist::distribute_2d;

#[derive(Clone, Debug)]
pub struct Summa2DConfig<S> {
    pub pr: usize,
    pub pc: usize,
    pub blocking: Blocking,
    pub nthreads: usize,
    pub semiring: S,
}

impl<S: Semiring> Summa2DConfig<S> {
    pub fn new(pr: usize, pc: usize, blocking: Blocking, nthreads: usize, semiring: S) -> Result<Self> {
        let cfg = Summa2DConfig {
            pr,
            pc,
            blocking,
            nthreads,
            semiring,
        };
        cfg.as_3d()?;
        Ok(cfg)
    }

    fn as_3d(&self) -> Result<Split3DConfig<S>> {
        Split3DConfig::new(
            GridShape::new(self.pr, self.pc, 1)?,
            self.blocking,
            self.nthreads,
            self.semiring.clone(),
        )
    }
}

/// C = A·B with A and B laid out by [`distribute_2d`] on the same grid.
pub fn summa_2d<S>(
    a: &[SplitBlock<S::Scalar>],
    b: &[SplitBlock<S::Scalar>],
    cfg: &Summa2DConfig<S>,
) -> Result<Split3DRun<S::Scalar>>
where
    S: Semiring,
    S::Scalar: WireScalar,
{
    split_3d_spgemm(a, b, &cfg.as_3d()?)
}
