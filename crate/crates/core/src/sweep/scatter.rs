use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatterPoint {
    pub actual: f64,
    pub predicted: f64,
    /// `actual - predicted`
    pub residual: f64,
}

/// Diagnostic triples for one model over one dataset.
#[derive(Debug, Clone, PartialEq)]
pub struct ScatterSet {
    pub label: String,
    pub points: Vec<ScatterPoint>,
}

impl ScatterSet {
    pub fn new(label: impl Into<String>, actual: &[f64], predicted: &[f64]) -> Result<Self> {
        if actual.len() != predicted.len() {
            return Err(Error::LengthMismatch {
                expected: actual.len(),
                got: predicted.len(),
            });
        }
        let points = actual
            .iter()
            .zip(predicted)
            .map(|(&a, &p)| ScatterPoint {
                actual: a,
                predicted: p,
                residual: a - p,
            })
            .collect();
        Ok(Self {
            label: label.into(),
            points,
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

pub const SCATTER_FILES: [&str; 3] = [
    "predicted_vs_actual.csv",
    "residual_vs_actual.csv",
    "residual_vs_predicted.csv",
];

/// Writes the three diagnostic CSVs into `out_dir` (created if missing) and
/// returns their paths in [`SCATTER_FILES`] order.
pub fn emit_scatter(s: &ScatterSet, out_dir: impl AsRef<Path>) -> Result<[PathBuf; 3]> {
    if s.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let dir = out_dir.as_ref();
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;

    let mut bodies = [
        String::from("actual,predicted\n"),
        String::from("actual,residual\n"),
        String::from("predicted,residual\n"),
    ];
    for p in &s.points {
        bodies[0].push_str(&format!("{},{}\n", p.actual, p.predicted));
        bodies[1].push_str(&format!("{},{}\n", p.actual, p.residual));
        bodies[2].push_str(&format!("{},{}\n", p.predicted, p.residual));
    }
    let paths = SCATTER_FILES.map(|f| dir.join(f));
    for (path, body) in paths.iter().zip(&bodies) {
        fs::write(path, body).map_err(|e| Error::io(path, e))?;
    }
    Ok(paths)
}
