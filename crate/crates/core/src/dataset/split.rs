use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::sample::Dataset;
use crate::error::{Error, Result};

/// Seeded permutation of `0..n`.
///
/// Fisher–Yates from the back, drawing `j = next_u64() % (i + 1)` from a
/// ChaCha8 stream seeded with `ChaCha8Rng::seed_from_u64(seed)`. Both the
/// generator and the reduction are fixed so seeds are portable.
pub fn permutation(n: usize, seed: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut idx: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = (rng.next_u64() % (i as u64 + 1)) as usize;
        idx.swap(i, j);
    }
    idx
}

/// Shuffled train/test partition. The first `round(n * train_fraction)`
/// permuted indices go to train; each side keeps the original sample order.
pub fn split(d: &Dataset, train_fraction: f64, seed: u64) -> Result<(Dataset, Dataset)> {
    let (train_idx, test_idx) = split_indices(d.len(), train_fraction, seed)?;
    Ok((d.subset(&train_idx, "train"), d.subset(&test_idx, "test")))
}

pub fn split_indices(n: usize, train_fraction: f64, seed: u64) -> Result<(Vec<usize>, Vec<usize>)> {
    if !(train_fraction > 0.0 && train_fraction < 1.0) {
        return Err(Error::InvalidConfig(format!(
            "train fraction {train_fraction} must lie in (0, 1)"
        )));
    }
    let n_train = (n as f64 * train_fraction).round() as usize;
    if n_train == 0 || n_train >= n {
        return Err(Error::EmptySplit {
            n,
            fraction: train_fraction,
        });
    }
    let perm = permutation(n, seed);
    let mut train = perm[..n_train].to_vec();
    let mut test = perm[n_train..].to_vec();
    train.sort_unstable();
    test.sort_unstable();
    Ok((train, test))
}
