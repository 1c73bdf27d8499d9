//! Single-hidden-layer feedforward network: logistic hidden units, linear
//! output.
//!
//! ```text
//! out(x) = sum_j v_j * sigmoid(w_j . x + b_j) + b_out
//! ```

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub(crate) fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MlfnModel {
    pub input_dim: usize,
    /// `hidden_count x input_dim`, row-major (row j feeds hidden unit j).
    pub input_weights: Vec<f64>,
    pub hidden_biases: Vec<f64>,
    pub output_weights: Vec<f64>,
    pub output_bias: f64,
}

/// Same layout as [`MlfnModel`]'s parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct MlfnGradient {
    pub input_weights: Vec<f64>,
    pub hidden_biases: Vec<f64>,
    pub output_weights: Vec<f64>,
    pub output_bias: f64,
}

impl MlfnGradient {
    pub fn zeros(hidden: usize, input_dim: usize) -> Self {
        Self {
            input_weights: vec![0.0; hidden * input_dim],
            hidden_biases: vec![0.0; hidden],
            output_weights: vec![0.0; hidden],
            output_bias: 0.0,
        }
    }

    /// Parameter order: input weights, hidden biases, output weights, output bias.
    pub fn flatten(&self) -> Vec<f64> {
        let mut v = Vec::with_capacity(self.input_weights.len() + 2 * self.hidden_biases.len() + 1);
        v.extend_from_slice(&self.input_weights);
        v.extend_from_slice(&self.hidden_biases);
        v.extend_from_slice(&self.output_weights);
        v.push(self.output_bias);
        v
    }

    fn scale(&mut self, k: f64) {
        self.input_weights
            .iter_mut()
            .chain(&mut self.hidden_biases)
            .chain(&mut self.output_weights)
            .chain(std::iter::once(&mut self.output_bias))
            .for_each(|g| *g *= k);
    }
}

impl MlfnModel {
    /// All-zero parameters.
    pub fn zeros(hidden: usize, input_dim: usize) -> Self {
        Self {
            input_dim,
            input_weights: vec![0.0; hidden * input_dim],
            hidden_biases: vec![0.0; hidden],
            output_weights: vec![0.0; hidden],
            output_bias: 0.0,
        }
    }

    /// Uniform init in `+-1/sqrt(fan_in)` per layer (fan-in `input_dim` for
    /// the hidden layer, `hidden` for the output), biases included.
    pub fn init(hidden: usize, input_dim: usize, seed: u64) -> Result<Self> {
        if hidden < 1 {
            return Err(Error::InvalidConfig(
                "hidden node count must be >= 1".into(),
            ));
        }
        if input_dim < 1 {
            return Err(Error::InvalidConfig("input dimension must be >= 1".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b_in = 1.0 / (input_dim as f64).sqrt();
        let b_out = 1.0 / (hidden as f64).sqrt();
        let mut draw =
            |n: usize, b: f64| -> Vec<f64> { (0..n).map(|_| rng.random_range(-b..=b)).collect() };
        let input_weights = draw(hidden * input_dim, b_in);
        let hidden_biases = draw(hidden, b_in);
        let output_weights = draw(hidden, b_out);
        let output_bias = draw(1, b_out)[0];
        Ok(Self {
            input_dim,
            input_weights,
            hidden_biases,
            output_weights,
            output_bias,
        })
    }

    pub fn hidden_count(&self) -> usize {
        self.hidden_biases.len()
    }

    pub fn param_count(&self) -> usize {
        self.input_weights.len() + 2 * self.hidden_count() + 1
    }

    pub(crate) fn validate(&self) -> Result<()> {
        let h = self.hidden_count();
        if h < 1 || self.input_dim < 1 {
            return Err(Error::Corrupt("empty network".into()));
        }
        if self.input_weights.len() != h * self.input_dim || self.output_weights.len() != h {
            return Err(Error::Corrupt(format!(
                "inconsistent shapes for {h} hidden units and input dim {}",
                self.input_dim
            )));
        }
        if !self.flatten().iter().all(|v| v.is_finite()) {
            return Err(Error::Corrupt("non-finite parameter".into()));
        }
        Ok(())
    }

    fn check_len(&self, x: &[f64]) -> Result<()> {
        if x.len() == self.input_dim {
            Ok(())
        } else {
            Err(Error::LengthMismatch {
                expected: self.input_dim,
                got: x.len(),
            })
        }
    }

    fn hidden_activations(&self, x: &[f64], out: &mut [f64]) {
        for (j, a) in out.iter_mut().enumerate() {
            let row = &self.input_weights[j * self.input_dim..(j + 1) * self.input_dim];
            let z: f64 = row.iter().zip(x).map(|(w, v)| w * v).sum::<f64>() + self.hidden_biases[j];
            *a = sigmoid(z);
        }
    }

    pub fn forward(&self, x: &[f64]) -> Result<f64> {
        self.check_len(x)?;
        Ok(self.forward_unchecked(x))
    }

    pub(crate) fn forward_unchecked(&self, x: &[f64]) -> f64 {
        let mut hidden = vec![0.0; self.hidden_count()];
        self.hidden_activations(x, &mut hidden);
        hidden
            .iter()
            .zip(&self.output_weights)
            .map(|(a, v)| a * v)
            .sum::<f64>()
            + self.output_bias
    }

    /// Adds `scale * d/dtheta (forward(x) - y)^2` into `grad`; returns the
    /// prediction. `hidden` is scratch of length `hidden_count()`.
    pub(crate) fn accumulate_gradient(
        &self,
        x: &[f64],
        y: f64,
        scale: f64,
        hidden: &mut [f64],
        grad: &mut MlfnGradient,
    ) -> f64 {
        self.hidden_activations(x, hidden);
        let pred = hidden
            .iter()
            .zip(&self.output_weights)
            .map(|(a, v)| a * v)
            .sum::<f64>()
            + self.output_bias;
        let d_out = 2.0 * (pred - y) * scale;
        grad.output_bias += d_out;
        for (j, &a) in hidden.iter().enumerate() {
            grad.output_weights[j] += d_out * a;
            let d_z = d_out * self.output_weights[j] * a * (1.0 - a);
            grad.hidden_biases[j] += d_z;
            let row = &mut grad.input_weights[j * self.input_dim..(j + 1) * self.input_dim];
            for (g, v) in row.iter_mut().zip(x) {
                *g += d_z * v;
            }
        }
        pred
    }

    /// Exact gradient of `(forward(x) - y)^2` by backpropagation.
    pub fn gradient(&self, x: &[f64], y: f64) -> Result<MlfnGradient> {
        self.check_len(x)?;
        let mut grad = MlfnGradient::zeros(self.hidden_count(), self.input_dim);
        let mut hidden = vec![0.0; self.hidden_count()];
        self.accumulate_gradient(x, y, 1.0, &mut hidden, &mut grad);
        Ok(grad)
    }

    /// Gradient of the mean squared error over a batch.
    pub fn batch_gradient<R: AsRef<[f64]>>(&self, x: &[R], y: &[f64]) -> Result<MlfnGradient> {
        if x.len() != y.len() {
            return Err(Error::LengthMismatch {
                expected: x.len(),
                got: y.len(),
            });
        }
        if x.is_empty() {
            return Err(Error::EmptyDataset);
        }
        let mut grad = MlfnGradient::zeros(self.hidden_count(), self.input_dim);
        let mut hidden = vec![0.0; self.hidden_count()];
        for (xi, &yi) in x.iter().zip(y) {
            self.check_len(xi.as_ref())?;
            self.accumulate_gradient(xi.as_ref(), yi, 1.0, &mut hidden, &mut grad);
        }
        grad.scale(1.0 / x.len() as f64);
        Ok(grad)
    }

    /// In-place step `theta -= lr * grad`.
    pub fn apply_step(&mut self, grad: &MlfnGradient, lr: f64) {
        let pairs = self
            .input_weights
            .iter_mut()
            .zip(&grad.input_weights)
            .chain(self.hidden_biases.iter_mut().zip(&grad.hidden_biases))
            .chain(self.output_weights.iter_mut().zip(&grad.output_weights));
        for (p, g) in pairs {
            *p -= lr * g;
        }
        self.output_bias -= lr * grad.output_bias;
    }

    /// Parameter order matches [`MlfnGradient::flatten`].
    pub fn flatten(&self) -> Vec<f64> {
        let mut v = Vec::with_capacity(self.param_count());
        v.extend_from_slice(&self.input_weights);
        v.extend_from_slice(&self.hidden_biases);
        v.extend_from_slice(&self.output_weights);
        v.push(self.output_bias);
        v
    }

    pub fn set_flat(&mut self, params: &[f64]) -> Result<()> {
        if params.len() != self.param_count() {
            return Err(Error::LengthMismatch {
                expected: self.param_count(),
                got: params.len(),
            });
        }
        let (w, rest) = params.split_at(self.input_weights.len());
        let (b, rest) = rest.split_at(self.hidden_count());
        let (v, rest) = rest.split_at(self.hidden_count());
        self.input_weights.copy_from_slice(w);
        self.hidden_biases.copy_from_slice(b);
        self.output_weights.copy_from_slice(v);
        self.output_bias = rest[0];
        Ok(())
    }
}

pub fn mlfn_init(hidden: usize, seed: u64) -> Result<MlfnModel> {
    MlfnModel::init(hidden, crate::dataset::ENCODED_DIM, seed)
}

pub fn mlfn_forward(m: &MlfnModel, x: &[f64]) -> Result<f64> {
    m.forward(x)
}

pub fn mlfn_gradient(m: &MlfnModel, x: &[f64], y: f64) -> Result<MlfnGradient> {
    m.gradient(x, y)
}
