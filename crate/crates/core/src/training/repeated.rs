use std::time::Duration;

use rayon::prelude::*;

use super::types::{millis, StopReason, TrialResult};
use crate::error::{Error, Result};

/// Outcome of `k` seeded trials. `trials` and `artifacts` are in seed order.
#[derive(Debug, Clone)]
pub struct Repeated<T> {
    pub summary: TrialResult,
    pub trials: Vec<TrialResult>,
    pub artifacts: Vec<T>,
}

/// Runs `trial(seed)` for seeds `base_seed..base_seed + k`, possibly in
/// parallel, and averages the results.
///
/// The summary holds the arithmetic means of test RMSE, train RMSE and wall
/// time (epochs are rounded to nearest), `seed = base_seed`, and the most
/// severe stop reason. The first failing trial in seed order is returned as
/// the error.
pub fn run_repeated<T, F>(k: usize, base_seed: u64, trial: F) -> Result<Repeated<T>>
where
    T: Send,
    F: Fn(u64) -> Result<(TrialResult, T)> + Sync,
{
    if k < 1 {
        return Err(Error::InvalidConfig("trial count must be >= 1".into()));
    }
    let outcomes: Vec<Result<(TrialResult, T)>> = (0..k as u64)
        .into_par_iter()
        .map(|i| trial(base_seed.wrapping_add(i)))
        .collect();
    let mut trials = Vec::with_capacity(k);
    let mut artifacts = Vec::with_capacity(k);
    for outcome in outcomes {
        let (t, a) = outcome?;
        trials.push(t);
        artifacts.push(a);
    }
    Ok(Repeated {
        summary: average(&trials, base_seed),
        trials,
        artifacts,
    })
}

fn average(trials: &[TrialResult], base_seed: u64) -> TrialResult {
    let n = trials.len() as f64;
    let mean = |f: fn(&TrialResult) -> f64| trials.iter().map(f).sum::<f64>() / n;
    let wall = mean(|t| t.wall_time.as_secs_f64());
    TrialResult {
        rmse_test: mean(|t| t.rmse_test),
        rmse_train: mean(|t| t.rmse_train),
        epochs_run: mean(|t| t.epochs_run as f64).round() as usize,
        wall_time: millis(Duration::from_secs_f64(wall)),
        stop_reason: trials
            .iter()
            .map(|t| t.stop_reason)
            .max()
            .unwrap_or(StopReason::AutoStopped),
        seed: base_seed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn stub(rmse: f64, seed: u64, reason: StopReason) -> TrialResult {
        TrialResult {
            rmse_test: rmse,
            rmse_train: rmse / 2.0,
            epochs_run: 10,
            wall_time: Duration::from_millis(100),
            stop_reason: reason,
            seed,
        }
    }

    #[test]
    fn single_trial_is_identity() {
        let r = run_repeated(1, 5, |s| Ok((stub(1.5, s, StopReason::AutoStopped), ()))).unwrap();
        assert_eq!(r.summary, r.trials[0]);
    }

    #[test]
    fn aggregate_reason_is_most_severe() {
        let r = run_repeated(3, 0, |s| {
            let reason = if s == 1 {
                StopReason::MaxEpochs
            } else {
                StopReason::AutoStopped
            };
            Ok((stub(2.0, s, reason), ()))
        })
        .unwrap();
        assert_eq!(r.summary.stop_reason, StopReason::MaxEpochs);
        assert_eq!(r.summary.rmse_test, 2.0);
    }

    #[test]
    fn errors() {
        assert!(run_repeated(0, 0, |s| Ok((stub(1.0, s, StopReason::AutoStopped), ()))).is_err());
        let r = run_repeated(4, 0, |s| {
            if s >= 2 {
                Err(Error::TooSmall(format!("seed {s}")))
            } else {
                Ok((stub(1.0, s, StopReason::AutoStopped), ()))
            }
        });
        match r {
            Err(Error::TooSmall(m)) => assert_eq!(m, "seed 2"),
            other => panic!("unexpected {other:?}"),
        }
    }
}
