//! Gradient-descent training, error metrics, repeated seeded trials and a
//! finite-difference gradient check.

mod gradcheck;
mod metrics;
mod repeated;
mod trainer;
mod types;

pub use gradcheck::{gradient_check, GradCheckReport};
pub use metrics::{evaluate, rmse};
pub use repeated::{run_repeated, Repeated};
pub use trainer::{train_grnn, train_linear, train_mlfn, TrainOutcome};
pub use types::{CancelToken, StopReason, TrainConfig, TrialResult};
