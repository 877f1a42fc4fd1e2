//! Virtual 3D process grid, collectives over a pluggable transport, and the
//! analytic communication cost model.

pub mod cost;
mod counters;
mod process;
mod shape;
mod transport;
mod wire;

pub use cost::{
    model_a2a, model_bcast, model_simplified, model_total_comm, model_total_comm_with, CommCostBreakdown, Contention,
    CostParams, ModelInputs, TermCost,
};
pub use counters::{CollectiveCounters, CommCounters};
pub use process::{grid_create, in_process_grid, in_process_grid_with, run_grid, CommKind, ProcessCtx};
pub use shape::GridShape;
pub use transport::{
    in_process_transport, CommError, InProcessEndpoint, Transport, DEFAULT_CHANNEL_CAPACITY, DEFAULT_RECV_TIMEOUT,
};
pub use wire::{encoded_len, Payload, HEADER_BYTES, TRIPLE_BYTES};
