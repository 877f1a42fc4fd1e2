//! Synthetic inputs: R-MAT (G500, SSCA, ER seeds) and Erdős–Rényi.
//!
//! Every random draw comes from a ChaCha8 stream selected by the entry (or
//! column) index, so generation is order-independent and runs in parallel
//! without changing the output.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Geometric};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matrix::{Triple, TripleList};

/// Default cap on the number of drawn entries.
pub const DEFAULT_MAX_ENTRIES: usize = 1 << 31;

#[derive(Clone, Debug, PartialEq)]
pub struct RmatParams {
    /// The matrix is `2^scale` × `2^scale`.
    pub scale: u32,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub avg_nnz_per_row: usize,
    pub seed: u64,
    pub max_entries: usize,
}

impl RmatParams {
    pub fn new(scale: u32, quadrants: [f64; 4], avg_nnz_per_row: usize, seed: u64) -> Self {
        let [a, b, c, d] = quadrants;
        RmatParams {
            scale,
            a,
            b,
            c,
            d,
            avg_nnz_per_row,
            seed,
            max_entries: DEFAULT_MAX_ENTRIES,
        }
    }

    /// Graph500 seed (.57, .19, .19, .05), 16 entries per row.
    pub fn g500(scale: u32, seed: u64) -> Self {
        Self::new(scale, [0.57, 0.19, 0.19, 0.05], 16, seed)
    }

    /// SSCA#2 seed (.6, .4/3, .4/3, .4/3), 8 entries per row.
    pub fn ssca(scale: u32, seed: u64) -> Self {
        let r = 0.4 / 3.0;
        Self::new(scale, [0.6, r, r, r], 8, seed)
    }

    /// Uniform seed (.25 each), 16 entries per row.
    pub fn er(scale: u32, seed: u64) -> Self {
        Self::new(scale, [0.25; 4], 16, seed)
    }

    pub fn dimension(&self) -> usize {
        1usize << self.scale
    }

    /// Number of entries drawn before duplicates are summed.
    pub fn drawn_entries(&self) -> usize {
        self.avg_nnz_per_row << self.scale
    }

    fn validate(&self) -> Result<()> {
        let probs = [self.a, self.b, self.c, self.d];
        if probs.iter().any(|p| !(0.0..=1.0).contains(p)) {
            return Err(Error::config("R-MAT probabilities must lie in [0, 1]"));
        }
        if (probs.iter().sum::<f64>() - 1.0).abs() > 1e-12 {
            return Err(Error::config("R-MAT probabilities must sum to 1"));
        }
        if self.scale == 0 {
            return Err(Error::config("R-MAT scale must be at least 1"));
        }
        if self.scale >= 48 || (self.avg_nnz_per_row as u128) << self.scale > self.max_entries as u128 {
            return Err(Error::config(format!(
                "scale {} with {} entries per row exceeds the cap of {} entries",
                self.scale, self.avg_nnz_per_row, self.max_entries
            )));
        }
        Ok(())
    }
}

/// Raw R-MAT draws, before duplicate reduction. Entry `e` descends `scale`
/// levels of the quadrant recursion using stream `e` of the seeded ChaCha8
/// generator.
pub fn rmat_edges(p: &RmatParams) -> Result<Vec<(usize, usize)>> {
    p.validate()?;
    let base = ChaCha8Rng::seed_from_u64(p.seed);
    let (ab, abc) = (p.a + p.b, p.a + p.b + p.c);
    Ok((0..p.drawn_entries() as u64)
        .into_par_iter()
        .map(|e| {
            let mut rng = base.clone();
            rng.set_stream(e);
            let (mut row, mut col) = (0usize, 0usize);
            for level in (0..p.scale).rev() {
                let r: f64 = rng.random();
                let bit = 1usize << level;
                if r < p.a {
                } else if r < ab {
                    col |= bit;
                } else if r < abc {
                    row |= bit;
                } else {
                    row |= bit;
                    col |= bit;
                }
            }
            (row, col)
        })
        .collect())
}

/// R-MAT matrix with all values 1.0; repeated draws are summed, so the
/// realized nnz is at most `avg_nnz_per_row · 2^scale`. Diagonal entries
/// are kept.
pub fn rmat_generate(p: &RmatParams) -> Result<TripleList<f64>> {
    let n = p.dimension();
    let triples = rmat_edges(p)?
        .into_iter()
        .map(|(r, c)| Triple::new(r, c, 1.0))
        .collect();
    Ok(TripleList::new(n, n, triples)?.sum_duplicates_with(|a, b| a + b))
}

/// G(n, p) with p = d/n: every cell is present independently. Column `j`
/// is sampled from stream `j` by geometric skipping, so the cost is
/// O(n + nnz).
pub fn er_generate(n: usize, d: f64, seed: u64) -> Result<TripleList<f64>> {
    if !(d >= 0.0 && d <= n as f64) {
        return Err(Error::config(format!("average degree {d} must lie in [0, {n}]")));
    }
    if n as f64 * d > DEFAULT_MAX_ENTRIES as f64 {
        return Err(Error::config("expected entry count exceeds the generator cap"));
    }
    if n == 0 || d == 0.0 {
        return Ok(TripleList::empty(n, n));
    }
    let prob = d / n as f64;
    let skip = Geometric::new(prob).map_err(|e| Error::config(e.to_string()))?;
    let base = ChaCha8Rng::seed_from_u64(seed);
    let columns: Vec<Vec<Triple<f64>>> = (0..n)
        .into_par_iter()
        .map(|j| {
            let mut rng = base.clone();
            rng.set_stream(j as u64);
            let mut out = Vec::new();
            let mut row = 0u64;
            loop {
                row = row.saturating_add(skip.sample(&mut rng));
                if row >= n as u64 {
                    break;
                }
                out.push(Triple::new(row as usize, j, 1.0));
                row += 1;
            }
            out
        })
        .collect();
    let triples: Vec<Triple<f64>> = columns.into_iter().flatten().collect();
    TripleList::from_sorted(n, n, triples)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g500_scale4_shape_and_bound() {
        let p = RmatParams::g500(4, 11);
        assert_eq!(p.drawn_entries(), 256);
        let t = rmat_generate(&p).unwrap();
        assert_eq!(t.shape(), (16, 16));
        assert!(t.nnz() <= 256);
        let total: f64 = t.iter().map(|t| t.value).sum();
        assert_eq!(total, 256.0);
    }

    #[test]
    fn ssca_draw_count() {
        let p = RmatParams::ssca(6, 2);
        assert_eq!(p.dimension(), 64);
        assert_eq!(rmat_edges(&p).unwrap().len(), 8 * 64);
    }

    #[test]
    fn deterministic_per_seed() {
        let p = RmatParams::g500(8, 5);
        assert_eq!(rmat_generate(&p).unwrap(), rmat_generate(&p).unwrap());
        assert_ne!(
            rmat_generate(&p).unwrap(),
            rmat_generate(&RmatParams::g500(8, 6)).unwrap()
        );
        assert_eq!(er_generate(300, 4.0, 3).unwrap(), er_generate(300, 4.0, 3).unwrap());
    }

    #[test]
    fn invalid_params() {
        let mut p = RmatParams::g500(4, 0);
        p.a = 0.5;
        assert!(rmat_generate(&p).is_err());
        assert!(rmat_generate(&RmatParams::g500(0, 0)).is_err());
        let mut big = RmatParams::g500(30, 0);
        big.max_entries = 1 << 20;
        assert!(matches!(rmat_generate(&big), Err(Error::Config(_))));
        assert!(er_generate(10, 11.0, 0).is_err());
        assert!(er_generate(10, -1.0, 0).is_err());
    }

    #[test]
    fn er_edge_densities() {
        let dense = er_generate(17, 17.0, 1).unwrap();
        assert_eq!(dense.nnz(), 17 * 17);
        assert!(er_generate(17, 0.0, 1).unwrap().is_empty());
    }
}
