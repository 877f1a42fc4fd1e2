use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::grid::{model_total_comm, CostParams, ModelInputs};

/// Problem data and sweep ranges for [`model_sweep`].
#[derive(Clone, Debug, PartialEq)]
pub struct ModelSweep {
    pub nnz_a: f64,
    pub nnz_b: f64,
    pub flops: f64,
    pub n: f64,
    pub params: CostParams,
    pub p: Vec<usize>,
    pub c: Vec<usize>,
    pub b: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ModelRow {
    pub p: usize,
    pub c: usize,
    pub b: usize,
    pub b_redistribution: f64,
    pub a_broadcast: f64,
    pub b_broadcast: f64,
    pub c_exchange: f64,
    pub total: f64,
}

/// Evaluates the cost model at every (p, c, b) with `c ≤ p`, in sweep
/// order.
pub fn model_sweep(s: &ModelSweep) -> Result<Vec<ModelRow>> {
    if s.p.is_empty() || s.c.is_empty() || s.b.is_empty() {
        return Err(Error::config("every sweep range needs at least one value"));
    }
    let mut rows = Vec::new();
    for &p in &s.p {
        for &c in s.c.iter().filter(|&&c| c <= p) {
            for &b in &s.b {
                let m = ModelInputs {
                    nnz_a: s.nnz_a,
                    nnz_b: s.nnz_b,
                    flops: s.flops,
                    p: p as f64,
                    c: c as f64,
                    b: b as f64,
                    n: s.n,
                };
                let r = model_total_comm(&m, &s.params)?;
                rows.push(ModelRow {
                    p,
                    c,
                    b,
                    b_redistribution: r.b_redistribution.total(),
                    a_broadcast: r.a_broadcast.total(),
                    b_broadcast: r.b_broadcast.total(),
                    c_exchange: r.c_exchange.total(),
                    total: r.total(),
                });
            }
        }
    }
    if rows.is_empty() {
        return Err(Error::config("no sweep point has c <= p"));
    }
    Ok(rows)
}

/// CSV of the sweep; `best` marks the cheapest configuration (first one on
/// ties).
pub fn model_csv(rows: &[ModelRow]) -> String {
    let best = rows
        .iter()
        .enumerate()
        .min_by(|x, y| x.1.total.total_cmp(&y.1.total))
        .map(|(i, _)| i);
    let mut out = String::from("p,c,b,b_redistribution,a_broadcast,b_broadcast,c_exchange,total,best\n");
    for (i, r) in rows.iter().enumerate() {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            r.p,
            r.c,
            r.b,
            r.b_redistribution,
            r.a_broadcast,
            r.b_broadcast,
            r.c_exchange,
            r.total,
            u8::from(Some(i) == best)
        )
        .unwrap();
    }
    out
}
