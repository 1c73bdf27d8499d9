//! Trained predictor bundle and its on-disk format.
//!
//! A model file is a single JSON object:
//!
//! ```text
//! {
//!   "format": "firsweep-model",
//!   "version": 1,
//!   "model_kind": "linear" | "grnn" | "mlfn",
//!   "target_kind": "height" | "stock_volume",
//!   "codec": { "means": [4 numbers], "stddevs": [4 numbers] },
//!   "target_scale": { "mean": number, "stddev": number },
//!   "params": { ...family parameters... }
//! }
//! ```
//!
//! Numbers are written in shortest round-trip decimal form, so decoding
//! reproduces every parameter bit for bit.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::grnn::GrnnModel;
use super::linear::LinearModel;
use super::mlfn::MlfnModel;
use crate::dataset::{Dataset, FeatureCodec, Sample, Target, ENCODED_DIM};
use crate::error::{Error, Result};

pub const FORMAT_NAME: &str = "firsweep-model";
pub const FORMAT_VERSION: u64 = 1;

#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    Linear(LinearModel),
    Grnn(GrnnModel),
    Mlfn(MlfnModel),
}

impl Family {
    pub fn kind(&self) -> &'static str {
        match self {
            Family::Linear(_) => "linear",
            Family::Grnn(_) => "grnn",
            Family::Mlfn(_) => "mlfn",
        }
    }

    /// Row label as printed in result tables.
    pub fn label(&self) -> String {
        match self {
            Family::Linear(_) => "Linear Predictor".to_owned(),
            Family::Grnn(_) => "GRNN".to_owned(),
            Family::Mlfn(m) => mlfn_label(m.hidden_count()),
        }
    }

    pub fn input_dim(&self) -> usize {
        match self {
            Family::Linear(m) => m.input_dim(),
            Family::Grnn(m) => m.input_dim(),
            Family::Mlfn(m) => m.input_dim,
        }
    }

    fn predict_raw(&self, x: &[f64]) -> f64 {
        match self {
            Family::Linear(m) => m.predict_unchecked(x),
            Family::Grnn(m) => m.predict_unchecked(x),
            Family::Mlfn(m) => m.forward_unchecked(x),
        }
    }
}

pub fn mlfn_label(nodes: usize) -> String {
    format!("MLFN {nodes} Nodes")
}

/// Affine map from model space back to target units: `y = mean + stddev * raw`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TargetScale {
    pub mean: f64,
    pub stddev: f64,
}

impl TargetScale {
    pub const IDENTITY: TargetScale = TargetScale {
        mean: 0.0,
        stddev: 1.0,
    };

    /// Population mean and stddev; a zero-spread target maps with stddev 1.
    pub fn fit(y: &[f64]) -> Self {
        let n = y.len() as f64;
        let mean = y.iter().sum::<f64>() / n;
        let var = y.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
        let stddev = var.sqrt();
        Self {
            mean,
            stddev: if stddev > 0.0 { stddev } else { 1.0 },
        }
    }

    pub fn to_model(&self, y: f64) -> f64 {
        (y - self.mean) / self.stddev
    }

    pub fn to_target(&self, raw: f64) -> f64 {
        self.mean + self.stddev * raw
    }
}

/// A fitted family together with the feature codec and target it was
/// trained for. Predictions are always in original target units.
#[derive(Debug, Clone, PartialEq)]
pub struct Model {
    pub family: Family,
    pub codec: FeatureCodec,
    pub target: Target,
    pub target_scale: TargetScale,
}

impl Model {
    pub fn predict_encoded(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.family.input_dim() {
            return Err(Error::LengthMismatch {
                expected: self.family.input_dim(),
                got: x.len(),
            });
        }
        Ok(self.target_scale.to_target(self.family.predict_raw(x)))
    }

    pub fn predict(&self, s: &Sample) -> f64 {
        let x = self.codec.encode(s);
        self.target_scale.to_target(self.family.predict_raw(&x))
    }

    pub fn predict_all(&self, d: &Dataset) -> Vec<f64> {
        d.samples().iter().map(|s| self.predict(s)).collect()
    }

    pub fn label(&self) -> String {
        self.family.label()
    }

    pub fn to_json(&self) -> String {
        let params = match &self.family {
            Family::Linear(m) => serde_json::to_value(m),
            Family::Grnn(m) => serde_json::to_value(m),
            Family::Mlfn(m) => serde_json::to_value(m),
        }
        .expect("model parameters serialize");
        let doc = Envelope {
            format: FORMAT_NAME.to_owned(),
            version: FORMAT_VERSION,
            model_kind: self.family.kind().to_owned(),
            target_kind: self.target,
            codec: self.codec.clone(),
            target_scale: self.target_scale,
            params,
        };
        let mut s = serde_json::to_string_pretty(&doc).expect("envelope serializes");
        s.push('\n');
        s
    }

    pub fn serialize(&self) -> Vec<u8> {
        self.to_json().into_bytes()
    }

    pub fn deserialize(bytes: &[u8]) -> Result<Model> {
        let value: Value =
            serde_json::from_slice(bytes).map_err(|e| Error::Corrupt(e.to_string()))?;
        let obj = value
            .as_object()
            .ok_or_else(|| Error::Corrupt("top level is not an object".into()))?;
        match obj.get("format").and_then(Value::as_str) {
            Some(FORMAT_NAME) => {}
            Some(other) => return Err(Error::Version(format!("unknown format `{other}`"))),
            None => return Err(Error::Corrupt("missing `format`".into())),
        }
        match obj.get("version").and_then(Value::as_u64) {
            Some(FORMAT_VERSION) => {}
            Some(v) => {
                return Err(Error::Version(format!(
                    "version {v} (this build reads {FORMAT_VERSION})"
                )))
            }
            None => return Err(Error::Corrupt("missing `version`".into())),
        }
        let kind = obj
            .get("model_kind")
            .and_then(Value::as_str)
            .map(str::to_owned)
            .ok_or_else(|| Error::Corrupt("missing `model_kind`".into()))?;
        if !matches!(kind.as_str(), "linear" | "grnn" | "mlfn") {
            return Err(Error::Version(format!("unknown model kind `{kind}`")));
        }

        let doc: Envelope =
            serde_json::from_value(value).map_err(|e| Error::Corrupt(e.to_string()))?;
        let corrupt = |e: serde_json::Error| Error::Corrupt(e.to_string());
        let family = match kind.as_str() {
            "linear" => Family::Linear(serde_json::from_value(doc.params).map_err(corrupt)?),
            "grnn" => Family::Grnn(serde_json::from_value(doc.params).map_err(corrupt)?),
            _ => Family::Mlfn(serde_json::from_value(doc.params).map_err(corrupt)?),
        };
        let model = Model {
            family,
            codec: doc.codec,
            target: doc.target_kind,
            target_scale: doc.target_scale,
        };
        model.validate()?;
        Ok(model)
    }

    fn validate(&self) -> Result<()> {
        self.codec.validate()?;
        let ts = self.target_scale;
        if !(ts.mean.is_finite() && ts.stddev.is_finite() && ts.stddev > 0.0) {
            return Err(Error::Corrupt("invalid target scale".into()));
        }
        match &self.family {
            Family::Linear(m) => {
                if !m.weights.iter().chain([&m.bias]).all(|v| v.is_finite()) {
                    return Err(Error::Corrupt("non-finite linear parameter".into()));
                }
            }
            Family::Grnn(m) => m.validate().map_err(|e| Error::Corrupt(e.to_string()))?,
            Family::Mlfn(m) => m.validate()?,
        }
        if self.family.input_dim() != ENCODED_DIM {
            return Err(Error::Corrupt(format!(
                "input dimension {} does not match the {ENCODED_DIM}-wide encoding",
                self.family.input_dim()
            )));
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Envelope {
    format: String,
    version: u64,
    model_kind: String,
    target_kind: Target,
    codec: FeatureCodec,
    target_scale: TargetScale,
    params: Value,
}

pub fn serialize(m: &Model) -> Vec<u8> {
    m.serialize()
}

pub fn deserialize(bytes: &[u8]) -> Result<Model> {
    Model::deserialize(bytes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::{fit_codec, generate_synthetic};
    use crate::models::{grnn_fit, mlfn_init, LinearConfig};

    fn models() -> Vec<Model> {
        let d = generate_synthetic(40, 0.3, 5);
        let codec = fit_codec(&d).unwrap();
        let x = codec.encode_all(&d);
        let y = d.targets(Target::Height).unwrap();
        let linear = crate::models::fit_linear(&x, &y, LinearConfig::default()).unwrap();
        let grnn = grnn_fit(&x, &y, &[0.1, 0.7]).unwrap();
        let mlfn = mlfn_init(5, 3).unwrap();
        vec![
            Model {
                family: Family::Linear(linear),
                codec: codec.clone(),
                target: Target::Height,
                target_scale: TargetScale::IDENTITY,
            },
            Model {
                family: Family::Grnn(grnn),
                codec: codec.clone(),
                target: Target::StockVolume,
                target_scale: TargetScale::IDENTITY,
            },
            Model {
                family: Family::Mlfn(mlfn),
                codec,
                target: Target::Height,
                target_scale: TargetScale::fit(&y),
            },
        ]
    }

    #[test]
    fn round_trip_every_family() {
        for m in models() {
            let back = deserialize(&serialize(&m)).unwrap();
            assert_eq!(back, m);
        }
    }

    #[test]
    fn truncated_payload_is_corrupt() {
        for m in models() {
            let bytes = serialize(&m);
            let cut = &bytes[..bytes.len() / 2];
            assert!(matches!(deserialize(cut), Err(Error::Corrupt(_))));
        }
        assert!(matches!(deserialize(b""), Err(Error::Corrupt(_))));
    }

    #[test]
    fn unknown_kind_is_version_error() {
        let text = models()[0].to_json().replace("\"linear\"", "\"forest\"");
        assert!(matches!(
            deserialize(text.as_bytes()),
            Err(Error::Version(_))
        ));
        let text = models()[0]
            .to_json()
            .replace("\"version\": 1", "\"version\": 2");
        assert!(matches!(
            deserialize(text.as_bytes()),
            Err(Error::Version(_))
        ));
    }

    #[test]
    fn shape_corruption_detected() {
        let text = models()[2]
            .to_json()
            .replace("\"input_dim\": 12", "\"input_dim\": 11");
        assert!(matches!(
            deserialize(text.as_bytes()),
            Err(Error::Corrupt(_))
        ));
    }

    #[test]
    fn labels() {
        let labels: Vec<String> = models().iter().map(Model::label).collect();
        assert_eq!(labels, ["Linear Predictor", "GRNN", "MLFN 5 Nodes"]);
    }
}
