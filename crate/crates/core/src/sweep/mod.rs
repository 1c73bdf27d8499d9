//! The model-selection experiment: Linear Predictor, GRNN, then one MLFN
//! row per hidden-node count, all scored on one shared test split.

mod report;
mod scatter;

use std::time::Instant;

use sha2::{Digest, Sha256};

pub use report::{
    best_row_index, format_hms, format_rms, render_table, SweepReport, SweepRow, TableFormat,
    COLUMNS, TRAIN_RMS_COLUMN,
};
pub use scatter::{emit_scatter, ScatterPoint, ScatterSet, SCATTER_FILES};

use crate::dataset::{split, write_csv, Dataset, Target};
use crate::error::{Error, Result};
use crate::models::{mlfn_label, LinearConfig, Model, DEFAULT_SIGMA_GRID};
use crate::training::{
    evaluate, run_repeated, train_grnn, train_linear, train_mlfn, CancelToken, Repeated,
    StopReason, TrainConfig, TrialResult,
};

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub target: Target,
    pub nodes_min: usize,
    pub nodes_max: usize,
    /// Trials per row.
    pub trials: usize,
    pub train_fraction: f64,
    pub train: TrainConfig,
    /// Seeds the shared split and is the base seed of every row's trials.
    pub seed: u64,
    pub sigma_grid: Vec<f64>,
    pub linear: LinearConfig,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            target: Target::Height,
            nodes_min: 2,
            nodes_max: 16,
            trials: 10,
            train_fraction: 0.8,
            train: TrainConfig::default(),
            seed: 0,
            sigma_grid: DEFAULT_SIGMA_GRID.to_vec(),
            linear: LinearConfig::default(),
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.nodes_min < 1 || self.nodes_min > self.nodes_max {
            return Err(Error::InvalidConfig(format!(
                "node range {}..{} must be nonempty with lower bound >= 1",
                self.nodes_min, self.nodes_max
            )));
        }
        if self.trials < 1 {
            return Err(Error::InvalidConfig("trials must be >= 1".into()));
        }
        self.train.validate()
    }
}

#[derive(Debug, Clone)]
pub struct SweepOutcome {
    pub report: SweepReport,
    /// Training-set diagnostics for the best row.
    pub scatter: ScatterSet,
    pub train: Dataset,
    pub test: Dataset,
}

/// Hex SHA-256 prefix of the dataset's canonical CSV form.
pub fn dataset_digest(d: &Dataset) -> String {
    let mut buf = Vec::new();
    write_csv(d, &mut buf).expect("in-memory csv write");
    Sha256::digest(&buf)[..8]
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

fn scored<F>(
    train: &Dataset,
    test: &Dataset,
    target: Target,
    seed: u64,
    fit: F,
) -> Result<(TrialResult, Model)>
where
    F: FnOnce() -> Result<Model>,
{
    let started = Instant::now();
    let model = fit()?;
    let elapsed = started.elapsed();
    let rmse_test = evaluate(&model, test, target)?;
    let rmse_train = evaluate(&model, train, target)?;
    Ok((
        TrialResult {
            rmse_test,
            rmse_train,
            epochs_run: 0,
            wall_time: std::time::Duration::from_millis(elapsed.as_millis() as u64),
            stop_reason: StopReason::AutoStopped,
            seed,
        },
        model,
    ))
}

fn row_from(label: String, r: &Repeated<Model>, digest: &str) -> SweepRow {
    SweepRow {
        model_label: label,
        rms_error: r.summary.rmse_test,
        rms_train: r.summary.rmse_train,
        training_time: r.summary.wall_time,
        stop_reason: r.summary.stop_reason,
        trials: r.trials.clone(),
        test_digest: digest.to_owned(),
    }
}

/// Runs every row in table order. Rows are sequential; trials within a row
/// may run in parallel. When `cancel` fires, the row in flight is recorded as
/// `UserStopped` and no further rows start.
///
/// Scatter points are the best row's predictions on the training split,
/// averaged over that row's trial models.
pub fn run_sweep(data: &Dataset, cfg: &SweepConfig, cancel: &CancelToken) -> Result<SweepOutcome> {
    cfg.validate()?;
    let target = cfg.target;
    let (train, test) = split(data, cfg.train_fraction, cfg.seed)?;
    let digest = dataset_digest(&test);

    let mut rows: Vec<SweepRow> = Vec::new();
    let mut models: Vec<Vec<Model>> = Vec::new();
    let mut push = |rows: &mut Vec<SweepRow>, label: String, r: Repeated<Model>| -> bool {
        let mut row = row_from(label, &r, &digest);
        let stopped = cancel.is_cancelled();
        if stopped {
            row.stop_reason = StopReason::UserStopped;
        }
        rows.push(row);
        models.push(r.artifacts);
        stopped
    };

    let linear = run_repeated(cfg.trials, cfg.seed, |seed| {
        scored(&train, &test, target, seed, || {
            train_linear(&train, target, cfg.linear)
        })
    })?;
    let mut halted = push(&mut rows, "Linear Predictor".into(), linear);

    if !halted {
        let grnn = run_repeated(cfg.trials, cfg.seed, |seed| {
            scored(&train, &test, target, seed, || {
                train_grnn(&train, target, &cfg.sigma_grid)
            })
        })?;
        halted = push(&mut rows, "GRNN".into(), grnn);
    }

    if !halted {
        for nodes in cfg.nodes_min..=cfg.nodes_max {
            let r = run_repeated(cfg.trials, cfg.seed, |seed| {
                let tc = TrainConfig {
                    seed,
                    ..cfg.train.clone()
                };
                let (model, out) = train_mlfn(&train, target, nodes, &tc, cancel)?;
                let rmse_test = evaluate(&model, &test, target)?;
                Ok((
                    TrialResult {
                        rmse_test,
                        rmse_train: out.rmse_train,
                        epochs_run: out.epochs_run,
                        wall_time: out.wall_time,
                        stop_reason: out.stop_reason,
                        seed,
                    },
                    model,
                ))
            })?;
            if push(&mut rows, mlfn_label(nodes), r) {
                break;
            }
        }
    }

    let report = SweepReport::new(target, rows, cfg.clone());
    let best_models = &models[report.best];
    let actual = train.targets(target)?;
    let mut predicted = vec![0.0; train.len()];
    for m in best_models {
        for (p, v) in predicted.iter_mut().zip(m.predict_all(&train)) {
            *p += v;
        }
    }
    let k = best_models.len() as f64;
    predicted.iter_mut().for_each(|p| *p /= k);
    let scatter = ScatterSet::new(report.best_row().model_label.clone(), &actual, &predicted)?;

    Ok(SweepOutcome {
        report,
        scatter,
        train,
        test,
    })
}
