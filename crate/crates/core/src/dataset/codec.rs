use serde::{Deserialize, Serialize};

use super::sample::{Dataset, Sample, SlopeDirection};
use crate::error::{Error, Result};

/// Standardized numeric columns: age, crown_density, slope, position ordinal.
pub const NUMERIC_FEATURES: [&str; 4] = ["age", "crown_density", "slope", "slope_position"];

/// Encoded width: 4 standardized numerics followed by 8 direction one-hots.
pub const ENCODED_DIM: usize = NUMERIC_FEATURES.len() + SlopeDirection::ALL.len();

/// Z-score parameters fit on training data.
///
/// Layout of an encoded vector:
///
/// | slots | content |
/// |-------|---------|
/// | 0..3  | age, crown_density, slope, each `(v - mean) / sd` |
/// | 3     | slope position ordinal (lower 0, middle 1, upper 2), z-scored |
/// | 4..12 | slope direction one-hot in N, NE, E, SE, S, SW, W, NW order |
///
/// Standard deviations are population (divide by n) deviations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureCodec {
    pub means: [f64; 4],
    pub stddevs: [f64; 4],
}

fn numeric_raw(s: &Sample) -> [f64; 4] {
    [s.age, s.crown_density, s.slope, s.slope_position.ordinal()]
}

impl FeatureCodec {
    pub fn fit(train: &Dataset) -> Result<Self> {
        if train.is_empty() {
            return Err(Error::EmptyDataset);
        }
        let n = train.len() as f64;
        let mut means = [0.0; 4];
        for s in train.samples() {
            for (m, v) in means.iter_mut().zip(numeric_raw(s)) {
                *m += v;
            }
        }
        means.iter_mut().for_each(|m| *m /= n);

        let mut stddevs = [0.0; 4];
        for s in train.samples() {
            for ((acc, m), v) in stddevs.iter_mut().zip(&means).zip(numeric_raw(s)) {
                *acc += (v - m) * (v - m);
            }
        }
        for (i, sd) in stddevs.iter_mut().enumerate() {
            *sd = (*sd / n).sqrt();
            if sd.is_nan() || *sd <= 0.0 {
                return Err(Error::DegenerateFeature(NUMERIC_FEATURES[i]));
            }
        }
        Ok(Self { means, stddevs })
    }

    pub fn encode(&self, s: &Sample) -> [f64; ENCODED_DIM] {
        let mut out = [0.0; ENCODED_DIM];
        for (i, v) in numeric_raw(s).into_iter().enumerate() {
            out[i] = (v - self.means[i]) / self.stddevs[i];
        }
        out[NUMERIC_FEATURES.len() + s.slope_direction.index()] = 1.0;
        out
    }

    pub fn encode_all(&self, d: &Dataset) -> Vec<[f64; ENCODED_DIM]> {
        d.samples().iter().map(|s| self.encode(s)).collect()
    }

    pub(crate) fn validate(&self) -> Result<()> {
        let ok = self.means.iter().all(|m| m.is_finite())
            && self.stddevs.iter().all(|s| s.is_finite() && *s > 0.0);
        if ok {
            Ok(())
        } else {
            Err(Error::Corrupt(
                "codec parameters must be finite with positive stddevs".into(),
            ))
        }
    }
}

pub fn fit_codec(train: &Dataset) -> Result<FeatureCodec> {
    FeatureCodec::fit(train)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::SlopePosition;

    fn s(age: f64, slope: f64, pos: SlopePosition, dir: SlopeDirection) -> Sample {
        Sample {
            age,
            crown_density: age / 40.0,
            slope,
            slope_position: pos,
            slope_direction: dir,
            height: None,
            stock_volume: None,
        }
    }

    fn three() -> Dataset {
        Dataset::new(
            vec![
                s(10.0, 5.0, SlopePosition::Lower, SlopeDirection::N),
                s(20.0, 15.0, SlopePosition::Middle, SlopeDirection::E),
                s(30.0, 25.0, SlopePosition::Upper, SlopeDirection::NW),
            ],
            "mem",
        )
        .unwrap()
    }

    #[test]
    fn population_stddev() {
        let c = fit_codec(&three()).unwrap();
        assert_eq!(c.means[0], 20.0);
        assert!((c.stddevs[0] - (200.0f64 / 3.0).sqrt()).abs() < 1e-12);
        assert_eq!(c.means[3], 1.0);
    }

    #[test]
    fn degenerate_feature_rejected() {
        let mut d = three().samples().to_vec();
        for x in &mut d {
            x.slope = 10.0;
        }
        let d = Dataset::new(d, "mem").unwrap();
        assert!(matches!(
            fit_codec(&d),
            Err(Error::DegenerateFeature("slope"))
        ));

        let one = Dataset::new(vec![three().samples()[0].clone()], "mem").unwrap();
        assert!(matches!(fit_codec(&one), Err(Error::DegenerateFeature(_))));
        let empty = Dataset::new(vec![], "mem").unwrap();
        assert!(matches!(fit_codec(&empty), Err(Error::EmptyDataset)));
    }

    #[test]
    fn encoding_layout() {
        let c = fit_codec(&three()).unwrap();
        let mean_sample = three().samples()[1].clone();
        let v = c.encode(&mean_sample);
        assert_eq!(v.len(), 12);
        assert_eq!(&v[..4], &[0.0; 4]);

        let north = c.encode(&three().samples()[0]);
        assert_eq!(north[4], 1.0);
        assert!(north[5..].iter().all(|&x| x == 0.0));
    }
}
