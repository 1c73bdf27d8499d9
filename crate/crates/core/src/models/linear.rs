use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Least-squares fitting options.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearConfig {
    /// Ridge penalty on the weights (never on the bias). 0 means plain OLS.
    pub ridge: f64,
    /// Penalty applied when the unpenalized design is rank deficient.
    /// `None` turns rank deficiency into [`Error::Singular`].
    pub fallback_ridge: Option<f64>,
}

impl Default for LinearConfig {
    fn default() -> Self {
        Self {
            ridge: 0.0,
            fallback_ridge: Some(1e-8),
        }
    }
}

impl LinearConfig {
    pub fn strict() -> Self {
        Self {
            ridge: 0.0,
            fallback_ridge: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearModel {
    pub weights: Vec<f64>,
    pub bias: f64,
}

impl LinearModel {
    pub fn predict(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.weights.len() {
            return Err(Error::LengthMismatch {
                expected: self.weights.len(),
                got: x.len(),
            });
        }
        Ok(self.predict_unchecked(x))
    }

    pub(crate) fn predict_unchecked(&self, x: &[f64]) -> f64 {
        self.weights.iter().zip(x).map(|(w, v)| w * v).sum::<f64>() + self.bias
    }

    pub fn input_dim(&self) -> usize {
        self.weights.len()
    }
}

pub fn predict_linear(m: &LinearModel, x: &[f64]) -> Result<f64> {
    m.predict(x)
}

/// Least squares with intercept, solved by Householder QR on the design
/// matrix `[X | 1]`. Ridge is applied by stacking `sqrt(lambda) * I` under
/// the weight columns, so the bias stays unpenalized.
pub fn fit_linear<R: AsRef<[f64]>>(x: &[R], y: &[f64], cfg: LinearConfig) -> Result<LinearModel> {
    if x.is_empty() {
        return Err(Error::EmptyDataset);
    }
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            expected: x.len(),
            got: y.len(),
        });
    }
    let dim = x[0].as_ref().len();
    if let Some(bad) = x.iter().find(|r| r.as_ref().len() != dim) {
        return Err(Error::LengthMismatch {
            expected: dim,
            got: bad.as_ref().len(),
        });
    }
    if !(cfg.ridge >= 0.0 && cfg.ridge.is_finite()) {
        return Err(Error::InvalidConfig(format!(
            "ridge {} must be >= 0",
            cfg.ridge
        )));
    }

    let solve = |lambda: f64| -> Option<DVector<f64>> {
        let extra = if lambda > 0.0 { dim } else { 0 };
        let rows = x.len() + extra;
        let mut a = DMatrix::<f64>::zeros(rows, dim + 1);
        let mut b = DVector::<f64>::zeros(rows);
        for (i, (row, &target)) in x.iter().zip(y).enumerate() {
            for (j, &v) in row.as_ref().iter().enumerate() {
                a[(i, j)] = v;
            }
            a[(i, dim)] = 1.0;
            b[i] = target;
        }
        let penalty = lambda.sqrt();
        for j in 0..extra {
            a[(x.len() + j, j)] = penalty;
        }
        least_squares_qr(a, b)
    };

    let beta = match solve(cfg.ridge) {
        Some(beta) => beta,
        None => match cfg.fallback_ridge {
            Some(lambda) if lambda > cfg.ridge => solve(lambda).ok_or(Error::Singular)?,
            _ => return Err(Error::Singular),
        },
    };
    let model = LinearModel {
        weights: beta.as_slice()[..dim].to_vec(),
        bias: beta[dim],
    };
    if model
        .weights
        .iter()
        .chain([&model.bias])
        .all(|v| v.is_finite())
    {
        Ok(model)
    } else {
        Err(Error::Singular)
    }
}

/// `None` when `a` is numerically rank deficient.
fn least_squares_qr(a: DMatrix<f64>, b: DVector<f64>) -> Option<DVector<f64>> {
    let (rows, cols) = a.shape();
    if rows < cols {
        return None;
    }
    let qr = a.qr();
    let r = qr.r();
    let diag_max = r.diagonal().iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let tol = diag_max * rows.max(cols) as f64 * f64::EPSILON;
    if diag_max == 0.0 || r.diagonal().iter().any(|v| v.abs() <= tol) {
        return None;
    }
    let qtb = qr.q().transpose() * b;
    r.solve_upper_triangular(&qtb)
}
