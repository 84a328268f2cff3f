//! Experiment orchestration: VQE runs, error sweeps, metrics and output files.

pub mod metrics;
mod plot;
mod records;
mod sweep;
mod vqe;

pub use metrics::{accuracy, accuracy_deviation, iteration_deviation};
pub use plot::emit_plots;
pub use records::{
    read_records, read_summary, write_records, write_summary, RunInfo, RECORD_HEADER,
};
pub use sweep::{
    error_grid, fill_deviations, summarize, sweep, ExperimentConfig, RunRecord, SweepOutput,
    SweepSummary,
};
pub use vqe::{
    prepare_state, run_vqe, run_vqe_traced, InitialParams, Reference, VqeConfig, VqeOutcome,
};
