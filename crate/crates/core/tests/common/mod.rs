//! Independent reference computations. Nothing here calls into the solver,
//! kernel or network code it is used to check.
#![allow(dead_code, clippy::needless_range_loop)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Solves `(A^T A) beta = A^T y` for `A = [X | 1]` by Gaussian elimination
/// with partial pivoting. Returns `(weights, bias)`.
pub fn normal_equations(x: &[Vec<f64>], y: &[f64]) -> (Vec<f64>, f64) {
    let p = x[0].len() + 1;
    let row = |i: usize| {
        let mut r = x[i].clone();
        r.push(1.0);
        r
    };
    let mut m = vec![vec![0.0; p + 1]; p];
    for i in 0..x.len() {
        let a = row(i);
        for j in 0..p {
            for k in 0..p {
                m[j][k] += a[j] * a[k];
            }
            m[j][p] += a[j] * y[i];
        }
    }
    for col in 0..p {
        let piv = (col..p)
            .max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))
            .unwrap();
        m.swap(col, piv);
        for r in col + 1..p {
            let f = m[r][col] / m[col][col];
            for c in col..=p {
                m[r][c] -= f * m[col][c];
            }
        }
    }
    let mut beta = vec![0.0; p];
    for r in (0..p).rev() {
        let s: f64 = (r + 1..p).map(|c| m[r][c] * beta[c]).sum();
        beta[r] = (m[r][p] - s) / m[r][r];
    }
    let bias = beta.pop().unwrap();
    (beta, bias)
}

pub fn random_design(rows: usize, cols: usize, seed: u64) -> (Vec<Vec<f64>>, Vec<f64>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x = (0..rows)
        .map(|_| (0..cols).map(|_| rng.random_range(-1.0..1.0)).collect())
        .collect();
    let y = (0..rows).map(|_| rng.random_range(-5.0..5.0)).collect();
    (x, y)
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1e-300)
}

/// Straight-line evaluation of `sum_j v_j / (1 + exp(-(w_j . x + b_j))) + c`.
pub fn mlfn_reference(w: &[f64], b: &[f64], v: &[f64], c: f64, x: &[f64]) -> f64 {
    let d = x.len();
    let mut out = c;
    for j in 0..b.len() {
        let mut z = b[j];
        for i in 0..d {
            z += w[j * d + i] * x[i];
        }
        out += v[j] / (1.0 + (-z).exp());
    }
    out
}

/// Central differences of `(f(theta) - y)^2` where `f` is [`mlfn_reference`]
/// on the flattened `[w, b, v, c]` vector.
pub fn fd_gradient(theta: &[f64], hidden: usize, x: &[f64], y: f64, h: f64) -> Vec<f64> {
    let d = x.len();
    let loss = |t: &[f64]| {
        let (w, rest) = t.split_at(hidden * d);
        let (b, rest) = rest.split_at(hidden);
        let (v, c) = rest.split_at(hidden);
        let r = mlfn_reference(w, b, v, c[0], x) - y;
        r * r
    };
    let mut t = theta.to_vec();
    (0..theta.len())
        .map(|i| {
            t[i] = theta[i] + h;
            let plus = loss(&t);
            t[i] = theta[i] - h;
            let minus = loss(&t);
            t[i] = theta[i];
            (plus - minus) / (2.0 * h)
        })
        .collect()
}

/// Nadaraya-Watson with a Gaussian kernel, weights normalized in log space
/// (log-sum-exp) so narrow bandwidths stay finite.
pub fn kernel_average(
    xs: &[Vec<f64>],
    ys: &[f64],
    q: &[f64],
    sigma: f64,
    skip: Option<usize>,
) -> f64 {
    let logs: Vec<(f64, f64)> = xs
        .iter()
        .zip(ys)
        .enumerate()
        .filter(|(i, _)| Some(*i) != skip)
        .map(|(_, (x, y))| {
            let d2: f64 = x.iter().zip(q).map(|(a, b)| (a - b).powi(2)).sum();
            (-d2 / (2.0 * sigma * sigma), *y)
        })
        .collect();
    let top = logs.iter().map(|l| l.0).fold(f64::NEG_INFINITY, f64::max);
    let log_den = top + logs.iter().map(|l| (l.0 - top).exp()).sum::<f64>().ln();
    logs.iter().map(|(l, y)| (l - log_den).exp() * y).sum()
}

pub fn loo_rmse(xs: &[Vec<f64>], ys: &[f64], sigma: f64) -> f64 {
    let mut sse = 0.0;
    for i in 0..xs.len() {
        let r = kernel_average(xs, ys, &xs[i], sigma, Some(i)) - ys[i];
        sse += r * r;
    }
    (sse / xs.len() as f64).sqrt()
}

pub fn brute_rmse(p: &[f64], a: &[f64]) -> f64 {
    let mut s = 0.0;
    let mut i = 0;
    while i < p.len() {
        s += (p[i] - a[i]) * (p[i] - a[i]);
        i += 1;
    }
    (s / p.len() as f64).sqrt()
}

pub fn population_sd(v: &[f64]) -> f64 {
    let m = v.iter().sum::<f64>() / v.len() as f64;
    (v.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / v.len() as f64).sqrt()
}
