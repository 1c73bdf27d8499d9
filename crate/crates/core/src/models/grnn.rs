use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Bandwidths searched by default, in encoded-feature units.
pub const DEFAULT_SIGMA_GRID: [f64; 12] = [
    0.05, 0.1, 0.15, 0.2, 0.3, 0.4, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0,
];

/// Gaussian-kernel regression over the stored training set:
/// `y(x) = sum_i y_i k_i / sum_i k_i` with `k_i = exp(-|x - x_i|^2 / (2 sigma^2))`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrnnModel {
    pub stored_inputs: Vec<Vec<f64>>,
    pub stored_targets: Vec<f64>,
    pub sigma: f64,
}

fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(u, v)| (u - v) * (u - v)).sum()
}

/// Kernel average of `targets` with log-weights `-d2 / (2 sigma^2)`.
/// Exponents are shifted by their maximum, so the nearest point always gets
/// weight 1 and the denominator never underflows.
fn kernel_average(d2: impl Iterator<Item = (f64, f64)> + Clone, sigma: f64) -> f64 {
    let scale = 1.0 / (2.0 * sigma * sigma);
    let min_d2 = d2.clone().fold(f64::INFINITY, |m, (d, _)| m.min(d));
    let (mut num, mut den) = (0.0, 0.0);
    for (d, y) in d2 {
        let w = (-(d - min_d2) * scale).exp();
        num += w * y;
        den += w;
    }
    num / den
}

impl GrnnModel {
    pub fn new(stored_inputs: Vec<Vec<f64>>, stored_targets: Vec<f64>, sigma: f64) -> Result<Self> {
        let m = Self {
            stored_inputs,
            stored_targets,
            sigma,
        };
        m.validate()?;
        Ok(m)
    }

    pub(crate) fn validate(&self) -> Result<()> {
        if self.stored_inputs.is_empty() {
            return Err(Error::EmptyDataset);
        }
        if self.stored_inputs.len() != self.stored_targets.len() {
            return Err(Error::LengthMismatch {
                expected: self.stored_inputs.len(),
                got: self.stored_targets.len(),
            });
        }
        let dim = self.input_dim();
        if let Some(r) = self.stored_inputs.iter().find(|r| r.len() != dim) {
            return Err(Error::LengthMismatch {
                expected: dim,
                got: r.len(),
            });
        }
        if !(self.sigma > 0.0 && self.sigma.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "sigma {} must be > 0",
                self.sigma
            )));
        }
        Ok(())
    }

    pub fn input_dim(&self) -> usize {
        self.stored_inputs[0].len()
    }

    pub fn predict(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.input_dim() {
            return Err(Error::LengthMismatch {
                expected: self.input_dim(),
                got: x.len(),
            });
        }
        Ok(self.predict_unchecked(x))
    }

    pub(crate) fn predict_unchecked(&self, x: &[f64]) -> f64 {
        let pairs = self
            .stored_inputs
            .iter()
            .zip(&self.stored_targets)
            .map(|(xi, &yi)| (sq_dist(x, xi), yi));
        kernel_average(pairs, self.sigma)
    }
}

pub fn grnn_predict(m: &GrnnModel, x: &[f64]) -> Result<f64> {
    m.predict(x)
}

/// Leave-one-out RMSE of the kernel average at bandwidth `sigma`.
/// `d2` is the full pairwise squared-distance matrix, row-major.
fn loo_rmse(d2: &[f64], y: &[f64], sigma: f64) -> f64 {
    let n = y.len();
    let sse: f64 = (0..n)
        .map(|i| {
            let row = &d2[i * n..(i + 1) * n];
            let pairs = row
                .iter()
                .zip(y)
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, (&d, &t))| (d, t));
            let r = kernel_average(pairs, sigma) - y[i];
            r * r
        })
        .sum();
    (sse / n as f64).sqrt()
}

/// Stores the training set and picks the grid bandwidth with the smallest
/// leave-one-out RMSE. Ties go to the smaller sigma. With a single training
/// point no LOO estimate exists and the smallest sigma is used.
pub fn grnn_fit<R: AsRef<[f64]>>(x: &[R], y: &[f64], sigma_grid: &[f64]) -> Result<GrnnModel> {
    if x.is_empty() {
        return Err(Error::EmptyDataset);
    }
    if sigma_grid.is_empty() {
        return Err(Error::InvalidConfig("empty sigma grid".into()));
    }
    if let Some(s) = sigma_grid.iter().find(|s| !(**s > 0.0 && s.is_finite())) {
        return Err(Error::InvalidConfig(format!("sigma {s} must be > 0")));
    }
    let inputs: Vec<Vec<f64>> = x.iter().map(|r| r.as_ref().to_vec()).collect();
    let mut grid = sigma_grid.to_vec();
    grid.sort_by(f64::total_cmp);

    let n = inputs.len();
    let sigma = if n == 1 {
        grid[0]
    } else {
        let mut d2 = vec![0.0; n * n];
        for i in 0..n {
            for j in i + 1..n {
                let d = sq_dist(&inputs[i], &inputs[j]);
                d2[i * n + j] = d;
                d2[j * n + i] = d;
            }
        }
        let mut best = (grid[0], f64::INFINITY);
        for &s in &grid {
            let e = loo_rmse(&d2, y, s);
            if e < best.1 {
                best = (s, e);
            }
        }
        best.0
    };
    GrnnModel::new(inputs, y.to_vec(), sigma)
}

/// Brute-force leave-one-out RMSE, exposed for diagnostics.
pub fn grnn_loo_rmse<R: AsRef<[f64]>>(x: &[R], y: &[f64], sigma: f64) -> Result<f64> {
    if x.len() < 2 {
        return Err(Error::TooSmall(
            "leave-one-out needs at least 2 points".into(),
        ));
    }
    let n = x.len();
    let mut d2 = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            d2[i * n + j] = sq_dist(x[i].as_ref(), x[j].as_ref());
        }
    }
    Ok(loo_rmse(&d2, y, sigma))
}
