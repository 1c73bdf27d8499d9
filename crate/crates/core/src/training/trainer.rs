use std::time::{Duration, Instant};

use super::metrics::rmse;
use super::types::{millis, CancelToken, StopReason, TrainConfig};
use crate::dataset::{fit_codec, Dataset, FeatureCodec, Target, ENCODED_DIM};
use crate::error::{Error, Result};
use crate::models::{fit_linear, grnn_fit, Family, LinearConfig, MlfnModel, Model, TargetScale};

/// What `train_mlfn` knows about its own run. Test error is added by the
/// caller once a test set is in hand.
#[derive(Debug, Clone, PartialEq)]
pub struct TrainOutcome {
    pub epochs_run: usize,
    pub wall_time: Duration,
    pub stop_reason: StopReason,
    /// RMSE over the whole training set (fit + validation), target units.
    pub rmse_train: f64,
    pub initial_val_rmse: f64,
    /// Tracked minimum; the returned model attains it.
    pub best_val_rmse: f64,
    /// 0 means the initial parameters were never beaten.
    pub best_epoch: usize,
    /// Validation RMSE after each epoch.
    pub val_history: Vec<f64>,
}

fn val_rmse(net: &MlfnModel, scale: &TargetScale, xv: &[[f64; ENCODED_DIM]], yv: &[f64]) -> f64 {
    let pred: Vec<f64> = xv
        .iter()
        .map(|x| scale.to_target(net.forward_unchecked(x)))
        .collect();
    rmse(&pred, yv).unwrap_or(f64::NAN)
}

/// Full-batch gradient descent on mean squared error with validation-patience
/// early stopping.
///
/// The codec is fit on all of `train`; a `validation_fraction` share is then
/// carved out (seeded by `cfg.seed`) and the rest drives the gradient. Each
/// epoch whose validation RMSE is a new minimum is checkpointed, and the
/// checkpoint is what comes back. Patience only resets when the minimum drops
/// by more than `min_delta`. `cancel` is polled before every epoch.
pub fn train_mlfn(
    train: &Dataset,
    target: Target,
    hidden: usize,
    cfg: &TrainConfig,
    cancel: &CancelToken,
) -> Result<(Model, TrainOutcome)> {
    cfg.validate()?;
    if hidden < 1 {
        return Err(Error::InvalidConfig(
            "hidden node count must be >= 1".into(),
        ));
    }
    let all_y = train.targets(target)?;
    let (fit_part, val_part) = cfg.carve_validation(train)?;
    let codec = fit_codec(train)?;

    let xs = codec.encode_all(&fit_part);
    let ys_raw = fit_part.targets(target)?;
    let scale = if cfg.standardize_targets {
        TargetScale::fit(&ys_raw)
    } else {
        TargetScale::IDENTITY
    };
    let ys: Vec<f64> = ys_raw.iter().map(|&y| scale.to_model(y)).collect();
    let xv = codec.encode_all(&val_part);
    let yv = val_part.targets(target)?;

    let mut net = MlfnModel::init(hidden, ENCODED_DIM, cfg.seed)?;

    let started = Instant::now();
    let initial = val_rmse(&net, &scale, &xv, &yv);
    let mut best = (initial, net.clone(), 0usize);
    let mut reference = initial;
    let mut since = 0usize;
    let mut history = Vec::new();
    let mut stop = StopReason::MaxEpochs;

    for epoch in 1..=cfg.max_epochs {
        if cancel.is_cancelled() {
            stop = StopReason::UserStopped;
            break;
        }
        let grad = net.batch_gradient(&xs, &ys)?;
        net.apply_step(&grad, cfg.learning_rate);
        let v = val_rmse(&net, &scale, &xv, &yv);
        history.push(v);
        if v < best.0 {
            best = (v, net.clone(), epoch);
        }
        if v < reference - cfg.min_delta {
            reference = v;
            since = 0;
        } else {
            since += 1;
            if since >= cfg.patience {
                stop = StopReason::AutoStopped;
                break;
            }
        }
    }
    let wall_time = millis(started.elapsed());

    let (best_val, best_net, best_epoch) = best;
    let model = Model {
        family: Family::Mlfn(best_net),
        codec,
        target,
        target_scale: scale,
    };
    let rmse_train = rmse(&model.predict_all(train), &all_y)?;
    Ok((
        model,
        TrainOutcome {
            epochs_run: history.len(),
            wall_time,
            stop_reason: stop,
            rmse_train,
            initial_val_rmse: initial,
            best_val_rmse: best_val,
            best_epoch,
            val_history: history,
        },
    ))
}

fn encoded(
    train: &Dataset,
    target: Target,
) -> Result<(FeatureCodec, Vec<[f64; ENCODED_DIM]>, Vec<f64>)> {
    let y = train.targets(target)?;
    let codec = fit_codec(train)?;
    let x = codec.encode_all(train);
    Ok((codec, x, y))
}

/// Least-squares predictor on the encoded features.
pub fn train_linear(train: &Dataset, target: Target, cfg: LinearConfig) -> Result<Model> {
    let (codec, x, y) = encoded(train, target)?;
    Ok(Model {
        family: Family::Linear(fit_linear(&x, &y, cfg)?),
        codec,
        target,
        target_scale: TargetScale::IDENTITY,
    })
}

/// GRNN with leave-one-out bandwidth selection over `sigma_grid`.
pub fn train_grnn(train: &Dataset, target: Target, sigma_grid: &[f64]) -> Result<Model> {
    let (codec, x, y) = encoded(train, target)?;
    Ok(Model {
        family: Family::Grnn(grnn_fit(&x, &y, sigma_grid)?),
        codec,
        target,
        target_scale: TargetScale::IDENTITY,
    })
}
