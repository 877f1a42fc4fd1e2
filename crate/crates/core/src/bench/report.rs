use std::fmt::Write as _;
use std::path::Path;

use crate::error::Result;
use crate::spgemm3d::Split3DRun;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Phase {
    Broadcast,
    AlltoAll,
    LocalMultiply,
    MergeLayer,
    MergeFiber,
}

impl Phase {
    pub const ALL: [Phase; 5] = [
        Phase::Broadcast,
        Phase::AlltoAll,
        Phase::LocalMultiply,
        Phase::MergeLayer,
        Phase::MergeFiber,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Phase::Broadcast => "Broadcast",
            Phase::AlltoAll => "AlltoAll",
            Phase::LocalMultiply => "LocalMultiply",
            Phase::MergeLayer => "MergeLayer",
            Phase::MergeFiber => "MergeFiber",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhaseRecord {
    pub phase: Phase,
    /// Slowest process.
    pub seconds_max: f64,
    pub seconds_mean: f64,
    /// Bytes sent by all processes.
    pub bytes: u64,
    pub messages: u64,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct RunMeta {
    pub p: usize,
    pub c: usize,
    pub b: String,
    pub t: usize,
    pub matrix: String,
    pub op: String,
    pub seed: u64,
}

/// Per-phase totals over one or more distributed multiplies.
#[derive(Clone, Debug, PartialEq)]
pub struct PhaseReport {
    pub meta: RunMeta,
    pub phases: [PhaseRecord; 5],
}

pub const CSV_HEADER: &str = "phase,seconds,bytes,messages";

impl PhaseReport {
    pub fn new(meta: RunMeta) -> Self {
        PhaseReport {
            meta,
            phases: Phase::ALL.map(|phase| PhaseRecord {
                phase,
                seconds_max: 0.0,
                seconds_mean: 0.0,
                bytes: 0,
                messages: 0,
            }),
        }
    }

    /// Adds the phases of one run.
    pub fn add_run<T>(&mut self, run: &Split3DRun<T>) {
        let p = run.stats.len().max(1) as f64;
        for rec in &mut self.phases {
            let secs: Vec<f64> = run
                .stats
                .iter()
                .map(|s| {
                    let t = &s.phases;
                    match rec.phase {
                        Phase::Broadcast => t.broadcast,
                        Phase::AlltoAll => t.alltoall,
                        Phase::LocalMultiply => t.local_multiply,
                        Phase::MergeLayer => t.merge_layer,
                        Phase::MergeFiber => t.merge_fiber,
                    }
                    .as_secs_f64()
                })
                .collect();
            rec.seconds_max += secs.iter().copied().fold(0.0, f64::max);
            rec.seconds_mean += secs.iter().sum::<f64>() / p;
            for s in &run.stats {
                let c = match rec.phase {
                    Phase::Broadcast => s.counters.bcast,
                    Phase::AlltoAll => s.counters.alltoall,
                    _ => continue,
                };
                rec.bytes += c.bytes_sent;
                rec.messages += c.messages_sent;
            }
        }
    }

    pub fn get(&self, phase: Phase) -> &PhaseRecord {
        &self.phases[Phase::ALL.iter().position(|&p| p == phase).unwrap()]
    }

    /// Metadata and mean times as `#` lines, then the header and one row
    /// per phase with the slowest process's time.
    pub fn to_csv(&self) -> String {
        let m = &self.meta;
        let mut out = String::new();
        writeln!(
            out,
            "# p={},c={},b={},t={},matrix={},op={},seed={}",
            m.p, m.c, m.b, m.t, m.matrix, m.op, m.seed
        )
        .unwrap();
        let means: Vec<String> = self
            .phases
            .iter()
            .map(|r| format!("{}={:.6}", r.phase.name(), r.seconds_mean))
            .collect();
        writeln!(out, "# mean_seconds {}", means.join(",")).unwrap();
        writeln!(out, "{CSV_HEADER}").unwrap();
        for r in &self.phases {
            writeln!(
                out,
                "{},{:.6},{},{}",
                r.phase.name(),
                r.seconds_max,
                r.bytes,
                r.messages
            )
            .unwrap();
        }
        out
    }

    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_csv())?;
        Ok(())
    }
}
