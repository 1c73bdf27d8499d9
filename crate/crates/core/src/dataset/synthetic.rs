//! Synthetic stand generator.
//!
//! Features are drawn independently and uniformly:
//!
//! - age in `[3, 40)` years
//! - crown_density in `[0.3, 1.0)`
//! - slope in `[0, 45)` degrees
//! - slope position and direction uniformly over their categories
//!
//! Targets come from a [`GroundTruth`] plus independent Gaussian noise
//! (same sd for both targets), clamped at zero. With zero noise every sample
//! satisfies `height == truth.height(&sample)` exactly.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use super::sample::{Dataset, Sample, SlopeDirection, SlopePosition};

/// Saturating growth surface.
///
/// ```text
/// base   = max_height * (1 - exp(-growth_rate * age))^shape
/// height = base * (1 + density_effect * (crown_density - 0.65))
///               * (1 - slope_effect * slope)
///               * position_factor[position]
///               * (1 + aspect_effect * cos(bearing))
/// volume = volume_coef * crown_density * height^volume_exponent
/// ```
///
/// Bearing is measured from north so north-facing stands grow tallest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthParams {
    pub max_height: f64,
    pub growth_rate: f64,
    pub shape: f64,
    pub density_effect: f64,
    pub slope_effect: f64,
    /// lower, middle, upper
    pub position_factor: [f64; 3],
    pub aspect_effect: f64,
    pub volume_coef: f64,
    pub volume_exponent: f64,
}

impl Default for GrowthParams {
    fn default() -> Self {
        Self {
            max_height: 28.0,
            growth_rate: 0.06,
            shape: 1.4,
            density_effect: 0.3,
            slope_effect: 0.004,
            position_factor: [1.08, 1.0, 0.9],
            aspect_effect: 0.05,
            volume_coef: 2.0,
            volume_exponent: 1.6,
        }
    }
}

/// Targets exactly affine in the encoded features:
/// `intercept + age*age + density*crown_density + slope*slope
///  + position*ordinal + direction[slot]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearCoefs {
    pub intercept: f64,
    pub age: f64,
    pub density: f64,
    pub slope: f64,
    pub position: f64,
    pub direction: [f64; 8],
}

impl LinearCoefs {
    fn eval(&self, s: &Sample) -> f64 {
        self.intercept
            + self.age * s.age
            + self.density * s.crown_density
            + self.slope * s.slope
            + self.position * s.slope_position.ordinal()
            + self.direction[s.slope_direction.index()]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum GroundTruth {
    Growth(GrowthParams),
    Linear {
        height: LinearCoefs,
        volume: LinearCoefs,
    },
}

impl Default for GroundTruth {
    fn default() -> Self {
        GroundTruth::Growth(GrowthParams::default())
    }
}

impl GroundTruth {
    /// A linear surface whose targets stay positive over the sampling ranges.
    pub fn linear() -> Self {
        GroundTruth::Linear {
            height: LinearCoefs {
                intercept: 2.0,
                age: 0.4,
                density: 5.0,
                slope: -0.05,
                position: -0.8,
                direction: [0.5, 0.35, 0.0, -0.35, -0.5, -0.35, 0.0, 0.35],
            },
            volume: LinearCoefs {
                intercept: 5.0,
                age: 8.0,
                density: 60.0,
                slope: -0.5,
                position: -6.0,
                direction: [4.0, 3.0, 0.0, -3.0, -4.0, -3.0, 0.0, 3.0],
            },
        }
    }

    pub fn height(&self, s: &Sample) -> f64 {
        match self {
            GroundTruth::Growth(p) => growth_height(p, s),
            GroundTruth::Linear { height, .. } => height.eval(s),
        }
    }

    pub fn stock_volume(&self, s: &Sample) -> f64 {
        match self {
            GroundTruth::Growth(p) => {
                let h = growth_height(p, s);
                p.volume_coef * s.crown_density * h.powf(p.volume_exponent)
            }
            GroundTruth::Linear { volume, .. } => volume.eval(s),
        }
    }
}

fn growth_height(p: &GrowthParams, s: &Sample) -> f64 {
    let base = p.max_height * (1.0 - (-p.growth_rate * s.age).exp()).powf(p.shape);
    let position = p.position_factor[s.slope_position.ordinal() as usize];
    let aspect = 1.0 + p.aspect_effect * s.slope_direction.bearing().to_radians().cos();
    base * (1.0 + p.density_effect * (s.crown_density - 0.65))
        * (1.0 - p.slope_effect * s.slope)
        * position
        * aspect
}

/// Height under the default growth surface.
pub fn ground_truth_height(s: &Sample) -> f64 {
    GroundTruth::default().height(s)
}

/// Stock volume under the default growth surface.
pub fn ground_truth_stock_volume(s: &Sample) -> f64 {
    GroundTruth::default().stock_volume(s)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SyntheticConfig {
    pub n: usize,
    pub noise_sd: f64,
    pub seed: u64,
    pub truth: GroundTruth,
}

impl SyntheticConfig {
    pub fn new(n: usize, noise_sd: f64, seed: u64) -> Self {
        Self {
            n,
            noise_sd,
            seed,
            truth: GroundTruth::default(),
        }
    }

    pub fn with_truth(mut self, truth: GroundTruth) -> Self {
        self.truth = truth;
        self
    }

    pub fn generate(&self) -> Dataset {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        // noise_sd is validated nonnegative by callers; NaN falls back to 0.
        let noise = Normal::new(0.0, self.noise_sd.max(0.0)).expect("finite sd");
        let samples = (0..self.n)
            .map(|_| {
                let mut s = Sample {
                    age: rng.random_range(3.0..40.0),
                    crown_density: rng.random_range(0.3..1.0),
                    slope: rng.random_range(0.0..45.0),
                    slope_position: SlopePosition::ALL[rng.random_range(0..3)],
                    slope_direction: SlopeDirection::ALL[rng.random_range(0..8)],
                    height: None,
                    stock_volume: None,
                };
                let (eh, ev) = if self.noise_sd > 0.0 {
                    (noise.sample(&mut rng), noise.sample(&mut rng))
                } else {
                    (0.0, 0.0)
                };
                s.height = Some((self.truth.height(&s) + eh).max(0.0));
                s.stock_volume = Some((self.truth.stock_volume(&s) + ev).max(0.0));
                s
            })
            .collect();
        Dataset::from_validated(
            samples,
            format!(
                "synthetic(n={}, noise={}, seed={})",
                self.n, self.noise_sd, self.seed
            ),
        )
    }
}

/// `n` samples from the default growth surface.
pub fn generate_synthetic(n: usize, noise_sd: f64, seed: u64) -> Dataset {
    SyntheticConfig::new(n, noise_sd, seed).generate()
}
