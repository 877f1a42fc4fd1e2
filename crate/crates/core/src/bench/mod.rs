//! The `spgemm-bench` driver: builds or loads a matrix, runs a product on the
//! simulated grid, optionally checks it against the serial oracle, and
//! writes a per-phase CSV. A `model` subcommand tabulates the analytic cost.

mod cli;
mod model;
mod report;

pub use cli::{
    exit_code, main_with_args, model_report, run, Cli, Command, GenKind, MatrixArgs, ModelArgs, Op, RunArgs,
    EXIT_CONFIG, EXIT_IO, EXIT_OK, EXIT_VERIFY,
};
pub use model::{model_csv, model_sweep, ModelRow, ModelSweep};
pub use report::{Phase, PhaseRecord, PhaseReport, RunMeta, CSV_HEADER};
