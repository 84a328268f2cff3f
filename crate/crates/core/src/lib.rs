//! Pulse-level variational eigensolver with injectable readout-rotation errors.

pub mod bundled;
pub mod error;
pub mod harness;
pub mod linalg;
pub mod measure;
pub mod optimize;
pub mod pauli;
pub mod pulse;
pub mod state;

pub use error::{Error, Result};

pub use harness::{ExperimentConfig, RunRecord, SweepSummary, VqeConfig};
pub use measure::{EstimatorMode, RotationError};
pub use optimize::OptimizerConfig;
pub use pauli::{PauliString, QubitHamiltonian};
pub use pulse::{AnsatzSpec, PulseSchedule};
pub use state::Statevector;
