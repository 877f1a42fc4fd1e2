//! Interchangeable SpGEMM back ends over whole (undistributed) matrices.

use crate::dist::{distribute_2d, distribute_3d};
use crate::error::Result;
use crate::kernels::heap_spgemm;
use crate::matrix::{DcscMatrix, TripleList};
use crate::semiring::{Semiring, WireScalar};
use crate::spgemm3d::{split_3d_spgemm, Split3DConfig, Split3DRun};
use crate::summa2d::{summa_2d, Summa2DConfig};

/// Computes C = A·B for reduced triple lists.
pub trait SpgemmEngine<S: Semiring> {
    fn name(&self) -> String;
    fn multiply(&self, a: &TripleList<S::Scalar>, b: &TripleList<S::Scalar>) -> Result<TripleList<S::Scalar>>;
}

/// [`heap_spgemm`] in one process.
#[derive(Clone, Debug)]
pub struct SerialEngine<S> {
    pub semiring: S,
    pub nthreads: usize,
}

impl<S> SerialEngine<S> {
    pub fn new(semiring: S, nthreads: usize) -> Self {
        SerialEngine { semiring, nthreads }
    }
}

impl<S: Semiring> SpgemmEngine<S> for SerialEngine<S> {
    fn name(&self) -> String {
        format!("serial t={}", self.nthreads)
    }

    fn multiply(&self, a: &TripleList<S::Scalar>, b: &TripleList<S::Scalar>) -> Result<TripleList<S::Scalar>> {
        let a = DcscMatrix::from_triples(a)?;
        let b = DcscMatrix::from_triples(b)?;
        heap_spgemm(&a, &b, &self.semiring, self.nthreads)
    }
}

#[derive(Clone, Debug)]
pub struct Summa2DEngine<S> {
    pub cfg: Summa2DConfig<S>,
}

impl<S> SpgemmEngine<S> for Summa2DEngine<S>
where
    S: Semiring,
    S::Scalar: WireScalar,
{
    fn name(&self) -> String {
        let c = &self.cfg;
        format!("2d {}x{} b={} t={}", c.pr, c.pc, c.blocking, c.nthreads)
    }

    fn multiply(&self, a: &TripleList<S::Scalar>, b: &TripleList<S::Scalar>) -> Result<TripleList<S::Scalar>> {
        let (pr, pc) = (self.cfg.pr, self.cfg.pc);
        summa_2d(&distribute_2d(a, pr, pc)?, &distribute_2d(b, pr, pc)?, &self.cfg)?.gather()
    }
}

#[derive(Clone, Debug)]
pub struct Split3DEngine<S> {
    pub cfg: Split3DConfig<S>,
}

impl<S> Split3DEngine<S>
where
    S: Semiring,
    S::Scalar: WireScalar,
{
    /// Distributes, multiplies and keeps the instrumented run.
    pub fn run(&self, a: &TripleList<S::Scalar>, b: &TripleList<S::Scalar>) -> Result<Split3DRun<S::Scalar>> {
        let shape = self.cfg.shape;
        split_3d_spgemm(&distribute_3d(a, shape)?, &distribute_3d(b, shape)?, &self.cfg)
    }
}

impl<S> SpgemmEngine<S> for Split3DEngine<S>
where
    S: Semiring,
    S::Scalar: WireScalar,
{
    fn name(&self) -> String {
        let c = &self.cfg;
        format!("3d {} b={} t={}", c.shape, c.blocking, c.nthreads)
    }

    fn multiply(&self, a: &TripleList<S::Scalar>, b: &TripleList<S::Scalar>) -> Result<TripleList<S::Scalar>> {
        self.run(a, b)?.gather()
    }
}
