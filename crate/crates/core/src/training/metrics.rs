use crate::dataset::{Dataset, Target};
use crate::error::{Error, Result};
use crate::models::Model;

/// Root-mean-square of `predicted - actual`.
pub fn rmse(predicted: &[f64], actual: &[f64]) -> Result<f64> {
    if predicted.len() != actual.len() {
        return Err(Error::LengthMismatch {
            expected: predicted.len(),
            got: actual.len(),
        });
    }
    if predicted.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let sse: f64 = predicted
        .iter()
        .zip(actual)
        .map(|(p, a)| (p - a) * (p - a))
        .sum();
    Ok((sse / predicted.len() as f64).sqrt())
}

/// Test-set RMSE in original target units.
pub fn evaluate(m: &Model, test: &Dataset, target: Target) -> Result<f64> {
    if m.target != target {
        return Err(Error::TargetMismatch {
            model: m.target.column(),
            requested: target.column(),
        });
    }
    if test.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let actual = test.targets(target)?;
    rmse(&m.predict_all(test), &actual)
}
