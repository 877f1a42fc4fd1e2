//! α–β communication cost model for the split 3D algorithm.
//!
//! Collectives are modeled without contention (ν = μ = 1):
//!
//! ```text
//! T_bcast(w, p̂) = α·log2(p̂)  + β·w·(p̂−1)/p̂
//! T_a2a(w, p̂)   = α·(p̂−1)    + β·w·(p̂−1)/p̂
//! ```
//!
//! where `w` is the per-process data volume in matrix elements and `p̂` the
//! number of participants. [`Contention`] accepts ν and μ, but only as plain
//! multipliers on the bandwidth term: no contention law is assumed.

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CostParams {
    /// Latency per message.
    pub alpha: f64,
    /// Inverse bandwidth per matrix element.
    pub beta: f64,
}

impl CostParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha >= 0.0 && beta >= 0.0) {
            return Err(Error::config("alpha and beta must be non-negative"));
        }
        Ok(CostParams { alpha, beta })
    }
}

/// ν (simultaneous collectives) and μ (processes per node).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Contention {
    pub nu: f64,
    pub mu: f64,
}

impl Default for Contention {
    fn default() -> Self {
        Contention { nu: 1.0, mu: 1.0 }
    }
}

impl Contention {
    fn factor(&self) -> f64 {
        self.nu * self.mu
    }
}

/// A cost split into its latency (α) and bandwidth (β) parts.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct TermCost {
    pub latency: f64,
    pub bandwidth: f64,
}

impl TermCost {
    pub fn total(&self) -> f64 {
        self.latency + self.bandwidth
    }

    fn scaled(self, s: f64) -> TermCost {
        TermCost {
            latency: self.latency * s,
            bandwidth: self.bandwidth * s,
        }
    }
}

pub fn model_bcast(w: f64, p_hat: f64, params: &CostParams) -> f64 {
    bcast_term(w, p_hat, params, &Contention::default()).total()
}

pub fn model_a2a(w: f64, p_hat: f64, params: &CostParams) -> f64 {
    a2a_term(w, p_hat, params, &Contention::default()).total()
}

pub fn bcast_term(w: f64, p_hat: f64, params: &CostParams, cont: &Contention) -> TermCost {
    TermCost {
        latency: params.alpha * p_hat.log2(),
        bandwidth: params.beta * cont.factor() * w * (p_hat - 1.0) / p_hat,
    }
}

pub fn a2a_term(w: f64, p_hat: f64, params: &CostParams, cont: &Contention) -> TermCost {
    TermCost {
        latency: params.alpha * (p_hat - 1.0),
        bandwidth: params.beta * cont.factor() * w * (p_hat - 1.0) / p_hat,
    }
}

/// Problem and machine configuration for [`model_total_comm`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModelInputs {
    pub nnz_a: f64,
    pub nnz_b: f64,
    pub flops: f64,
    /// Total processes.
    pub p: f64,
    /// Layers.
    pub c: f64,
    /// Blocking parameter.
    pub b: f64,
    /// Inner dimension.
    pub n: f64,
}

/// The four communication terms of one multiply, in execution order.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct CommCostBreakdown {
    /// All-to-all redistributing B across layers.
    pub b_redistribution: TermCost,
    /// n/(bc) row broadcasts of A pieces.
    pub a_broadcast: TermCost,
    /// n/(bc) column broadcasts of B pieces.
    pub b_broadcast: TermCost,
    /// All-to-all of intermediate C across layers (flops-based upper bound).
    pub c_exchange: TermCost,
}

impl CommCostBreakdown {
    pub fn broadcast(&self) -> f64 {
        self.a_broadcast.total() + self.b_broadcast.total()
    }

    pub fn alltoall(&self) -> f64 {
        self.b_redistribution.total() + self.c_exchange.total()
    }

    pub fn total(&self) -> f64 {
        self.broadcast() + self.alltoall()
    }
}

/// Evaluates the four-term communication cost of the split 3D algorithm on
/// a `√(p/c) × √(p/c) × c` grid.
pub fn model_total_comm(m: &ModelInputs, params: &CostParams) -> Result<CommCostBreakdown> {
    model_total_comm_with(m, params, &Contention::default())
}

pub fn model_total_comm_with(m: &ModelInputs, params: &CostParams, cont: &Contention) -> Result<CommCostBreakdown> {
    validate(m)?;
    let side = (m.p / m.c).sqrt();
    let stages = m.n / (m.b * m.c);
    Ok(CommCostBreakdown {
        b_redistribution: a2a_term(m.nnz_b / m.p, m.c, params, cont),
        a_broadcast: bcast_term(m.b / m.n * m.nnz_a / side, side, params, cont).scaled(stages),
        b_broadcast: bcast_term(m.b / m.n * m.nnz_b / side, side, params, cont).scaled(stages),
        c_exchange: a2a_term(m.flops / m.p, m.c, params, cont),
    })
}

/// Leading-order form of the same cost, constants dropped:
/// `α·(n/(bc)·log2(p/c) + c) + β·((nnz(A)+nnz(B))/√(pc) + flops/p)`.
pub fn model_simplified(m: &ModelInputs, params: &CostParams) -> Result<TermCost> {
    validate(m)?;
    Ok(TermCost {
        latency: params.alpha * (m.n / (m.b * m.c) * (m.p / m.c).log2() + m.c),
        bandwidth: params.beta * ((m.nnz_a + m.nnz_b) / (m.p * m.c).sqrt() + m.flops / m.p),
    })
}

fn validate(m: &ModelInputs) -> Result<()> {
    let positive = [m.p, m.c, m.b, m.n];
    if positive.iter().any(|v| !(*v > 0.0)) {
        return Err(Error::config("p, c, b and n must be positive"));
    }
    if [m.nnz_a, m.nnz_b, m.flops].iter().any(|v| !(*v >= 0.0)) {
        return Err(Error::config("nnz and flops must be non-negative"));
    }
    if m.c > m.p {
        return Err(Error::config("c cannot exceed p"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const UNIT: CostParams = CostParams { alpha: 1.0, beta: 1.0 };

    #[test]
    fn bcast_values() {
        let params = CostParams::new(1.0, 2.0).unwrap();
        assert_eq!(model_bcast(8.0, 1.0, &params), 0.0);
        assert_eq!(model_bcast(0.0, 4.0, &params), 2.0);
        assert_eq!(model_bcast(8.0, 4.0, &params), 14.0);
    }

    #[test]
    fn a2a_values() {
        assert_eq!(model_a2a(4.0, 1.0, &UNIT), 0.0);
        assert_eq!(model_a2a(4.0, 2.0, &UNIT), 3.0);
        let lat = CostParams::new(3.0, 5.0).unwrap();
        assert_eq!(model_a2a(0.0, 7.0, &lat), 18.0);
    }

    #[test]
    fn single_layer_has_no_alltoall_cost() {
        let m = ModelInputs {
            nnz_a: 1e6,
            nnz_b: 1e6,
            flops: 1.6e7,
            p: 16.0,
            c: 1.0,
            b: 64.0,
            n: 65536.0,
        };
        let r = model_total_comm(&m, &UNIT).unwrap();
        assert_eq!(r.alltoall(), 0.0);
        assert!(r.broadcast() > 0.0);
    }

    #[test]
    fn doubling_c_halves_stage_count() {
        let params = CostParams::new(1.0, 0.0).unwrap();
        let base = ModelInputs {
            nnz_a: 0.0,
            nnz_b: 0.0,
            flops: 0.0,
            p: 64.0,
            c: 1.0,
            b: 16.0,
            n: 1024.0,
        };
        // p/c kept fixed so the per-broadcast latency stays log2(8) = 3.
        let one = model_total_comm(&base, &params).unwrap();
        let two = model_total_comm(
            &ModelInputs {
                p: 128.0,
                c: 2.0,
                ..base
            },
            &params,
        )
        .unwrap();
        assert_eq!(one.a_broadcast.latency, 2.0 * two.a_broadcast.latency);
    }

    #[test]
    fn invalid_inputs() {
        assert!(CostParams::new(-1.0, 0.0).is_err());
        let m = ModelInputs {
            nnz_a: 1.0,
            nnz_b: 1.0,
            flops: 1.0,
            p: 4.0,
            c: 8.0,
            b: 1.0,
            n: 4.0,
        };
        assert!(model_total_comm(&m, &UNIT).is_err());
        assert!(model_total_comm(&ModelInputs { b: 0.0, c: 1.0, ..m }, &UNIT).is_err());
    }
}
