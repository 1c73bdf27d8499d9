use std::fmt;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::dataset::{split, Dataset};
use crate::error::{Error, Result};

/// Gradient-descent settings for MLFN training.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainConfig {
    pub learning_rate: f64,
    pub max_epochs: usize,
    /// Epochs without a `min_delta` improvement before auto-stopping.
    pub patience: usize,
    pub min_delta: f64,
    /// Share of the training set held out for early stopping.
    pub validation_fraction: f64,
    pub standardize_targets: bool,
    pub seed: u64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        Self {
            learning_rate: 0.05,
            max_epochs: 5000,
            patience: 100,
            min_delta: 1e-6,
            validation_fraction: 0.2,
            standardize_targets: true,
            seed: 0,
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidConfig(m));
        if !(self.learning_rate > 0.0 && self.learning_rate.is_finite()) {
            return bad(format!("learning rate {} must be > 0", self.learning_rate));
        }
        if self.patience < 1 {
            return bad("patience must be >= 1".into());
        }
        if !(self.min_delta >= 0.0 && self.min_delta.is_finite()) {
            return bad(format!("min_delta {} must be >= 0", self.min_delta));
        }
        if !(self.validation_fraction > 0.0 && self.validation_fraction < 1.0) {
            return bad(format!(
                "validation fraction {} must lie in (0, 1)",
                self.validation_fraction
            ));
        }
        Ok(())
    }

    /// The (fit, validation) partition `train_mlfn` uses for this seed.
    pub fn carve_validation(&self, train: &Dataset) -> Result<(Dataset, Dataset)> {
        split(train, 1.0 - self.validation_fraction, self.seed).map_err(|_| {
            Error::TooSmall(format!(
                "{} samples cannot hold a {} validation carve-out with a nonempty remainder",
                train.len(),
                self.validation_fraction
            ))
        })
    }
}

/// Why a training run ended. Ordered by severity for aggregation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum StopReason {
    /// Patience exhausted without validation improvement.
    AutoStopped,
    MaxEpochs,
    UserStopped,
}

impl StopReason {
    pub fn as_str(self) -> &'static str {
        match self {
            StopReason::AutoStopped => "Auto-Stopped",
            StopReason::MaxEpochs => "Max Epochs",
            StopReason::UserStopped => "Stopped by User",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [Self::AutoStopped, Self::MaxEpochs, Self::UserStopped]
            .into_iter()
            .find(|r| r.as_str() == s)
    }
}

impl fmt::Display for StopReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialResult {
    pub rmse_test: f64,
    pub rmse_train: f64,
    pub epochs_run: usize,
    pub wall_time: Duration,
    pub stop_reason: StopReason,
    pub seed: u64,
}

/// Shared stop flag, checked by training loops at epoch boundaries.
#[derive(Debug, Clone, Default)]
pub struct CancelToken(Arc<AtomicBool>);

impl CancelToken {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn cancel(&self) {
        self.0.store(true, Ordering::SeqCst);
    }

    pub fn is_cancelled(&self) -> bool {
        self.0.load(Ordering::SeqCst)
    }

    /// The underlying flag, for signal handlers that need a raw `AtomicBool`.
    pub fn flag(&self) -> Arc<AtomicBool> {
        Arc::clone(&self.0)
    }
}

/// Truncates to whole milliseconds.
pub(crate) fn millis(d: Duration) -> Duration {
    Duration::from_millis(d.as_millis() as u64)
}
