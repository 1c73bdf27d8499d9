//! The three predictor families and the serializable [`Model`] bundle.

mod grnn;
mod linear;
mod mlfn;
mod model;

pub use grnn::{grnn_fit, grnn_loo_rmse, grnn_predict, GrnnModel, DEFAULT_SIGMA_GRID};
pub use linear::{fit_linear, predict_linear, LinearConfig, LinearModel};
pub use mlfn::{mlfn_forward, mlfn_gradient, mlfn_init, MlfnGradient, MlfnModel};
pub use model::{
    deserialize, mlfn_label, serialize, Family, Model, TargetScale, FORMAT_NAME, FORMAT_VERSION,
};
