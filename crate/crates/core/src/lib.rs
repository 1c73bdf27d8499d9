//! Regression toolkit for forest stand data: a least-squares linear
//! predictor, a Gaussian-kernel GRNN and a single-hidden-layer MLFN trained
//! by gradient descent with early stopping, plus a harness that sweeps the
//! MLFN hidden-node count and reports RMS error, training time and stop
//! reason per model.
//!
//! Module map:
//!
//! - [`dataset`]: samples, CSV I/O, 12-wide feature encoding, seeded splits,
//!   synthetic data
//! - [`models`]: the three predictor families and the model file format
//! - [`training`]: gradient descent, RMSE, repeated trials, gradient check
//! - [`sweep`]: the full experiment, result table and scatter data

pub mod dataset;
pub mod error;
pub mod models;
pub mod sweep;
pub mod training;

pub use dataset::{Dataset, FeatureCodec, Sample, SlopeDirection, SlopePosition, Target};
pub use error::{Error, Result};
pub use models::{Family, GrnnModel, LinearModel, MlfnModel, Model};
pub use sweep::{run_sweep, ScatterSet, SweepConfig, SweepReport, SweepRow, TableFormat};
pub use training::{CancelToken, StopReason, TrainConfig, TrialResult};
