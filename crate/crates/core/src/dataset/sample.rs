use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Vertical position of a stand on its hillside.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SlopePosition {
    Lower,
    Middle,
    Upper,
}

impl SlopePosition {
    pub const ALL: [SlopePosition; 3] = [Self::Lower, Self::Middle, Self::Upper];

    /// Ordinal code used by the feature encoding: lower 0, middle 1, upper 2.
    pub fn ordinal(self) -> f64 {
        match self {
            Self::Lower => 0.0,
            Self::Middle => 1.0,
            Self::Upper => 2.0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Lower => "lower",
            Self::Middle => "middle",
            Self::Upper => "upper",
        }
    }
}

impl FromStr for SlopePosition {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| format!("`{s}` is not one of lower, middle, upper"))
    }
}

impl fmt::Display for SlopePosition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Compass aspect of the slope, eight classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SlopeDirection {
    N,
    NE,
    E,
    SE,
    S,
    SW,
    W,
    NW,
}

impl SlopeDirection {
    /// One-hot slot order used by the feature encoding.
    pub const ALL: [SlopeDirection; 8] = [
        Self::N,
        Self::NE,
        Self::E,
        Self::SE,
        Self::S,
        Self::SW,
        Self::W,
        Self::NW,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    /// Compass bearing in degrees, N = 0, clockwise.
    pub fn bearing(self) -> f64 {
        self.index() as f64 * 45.0
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::N => "N",
            Self::NE => "NE",
            Self::E => "E",
            Self::SE => "SE",
            Self::S => "S",
            Self::SW => "SW",
            Self::W => "W",
            Self::NW => "NW",
        }
    }
}

impl FromStr for SlopeDirection {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|d| d.as_str() == s)
            .ok_or_else(|| format!("`{s}` is not one of N, NE, E, SE, S, SW, W, NW"))
    }
}

impl fmt::Display for SlopeDirection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which dependent variable a model predicts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    Height,
    StockVolume,
}

impl Target {
    /// Column name in the CSV schema.
    pub fn column(self) -> &'static str {
        match self {
            Target::Height => "height",
            Target::StockVolume => "stock_volume",
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            Target::Height => "tree height",
            Target::StockVolume => "forest stock volume",
        }
    }

    pub fn value(self, s: &Sample) -> Option<f64> {
        match self {
            Target::Height => s.height,
            Target::StockVolume => s.stock_volume,
        }
    }
}

impl FromStr for Target {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "height" => Ok(Target::Height),
            "volume" | "stock_volume" => Ok(Target::StockVolume),
            other => Err(format!("unknown target `{other}` (height | volume)")),
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.column())
    }
}

/// One stand observation: five site features and two optional targets.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    /// Stand age in years.
    pub age: f64,
    /// Fraction of ground covered by crowns.
    pub crown_density: f64,
    /// Degrees.
    pub slope: f64,
    pub slope_position: SlopePosition,
    pub slope_direction: SlopeDirection,
    /// Meters.
    pub height: Option<f64>,
    /// Cubic meters per hectare.
    pub stock_volume: Option<f64>,
}

impl Sample {
    pub fn validate(&self) -> Result<()> {
        if let Some((column, message)) = self.violation() {
            return Err(Error::InvalidSample(format!("{column}: {message}")));
        }
        Ok(())
    }

    /// First violated range invariant, as (column, message).
    pub(crate) fn violation(&self) -> Option<(&'static str, String)> {
        if !(self.age.is_finite() && self.age > 0.0) {
            return Some(("age", format!("{} must be > 0", self.age)));
        }
        if !(0.0..=1.0).contains(&self.crown_density) {
            return Some((
                "crown_density",
                format!("{} must lie in [0, 1]", self.crown_density),
            ));
        }
        if !(0.0..90.0).contains(&self.slope) {
            return Some(("slope", format!("{} must lie in [0, 90)", self.slope)));
        }
        for (column, value) in [("height", self.height), ("stock_volume", self.stock_volume)] {
            if let Some(v) = value {
                if !(v.is_finite() && v >= 0.0) {
                    return Some((column, format!("{v} must be >= 0")));
                }
            }
        }
        None
    }
}

/// Ordered, immutable collection of samples.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    samples: Vec<Sample>,
    source: String,
}

impl Dataset {
    pub fn new(samples: Vec<Sample>, source: impl Into<String>) -> Result<Self> {
        for s in &samples {
            s.validate()?;
        }
        Ok(Self {
            samples,
            source: source.into(),
        })
    }

    pub(crate) fn from_validated(samples: Vec<Sample>, source: impl Into<String>) -> Self {
        Self {
            samples,
            source: source.into(),
        }
    }

    pub fn samples(&self) -> &[Sample] {
        &self.samples
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Target column; fails on the first row missing it.
    pub fn targets(&self, target: Target) -> Result<Vec<f64>> {
        self.samples
            .iter()
            .enumerate()
            .map(|(i, s)| {
                target.value(s).ok_or(Error::MissingTarget {
                    row: i + 1,
                    target: target.column(),
                })
            })
            .collect()
    }

    pub(crate) fn subset(&self, indices: &[usize], tag: &str) -> Dataset {
        Dataset {
            samples: indices.iter().map(|&i| self.samples[i].clone()).collect(),
            source: format!("{}#{tag}", self.source),
        }
    }
}
