//! Stand data: samples, CSV ingest, feature encoding, splitting and a
//! synthetic generator.

mod codec;
mod csv_io;
mod sample;
mod split;
mod synthetic;

pub use codec::{fit_codec, FeatureCodec, ENCODED_DIM, NUMERIC_FEATURES};
pub use csv_io::{
    load_csv, load_prediction_input, read_csv, save_csv, write_csv, Schema, FEATURE_COLUMNS, HEADER,
};
pub use sample::{Dataset, Sample, SlopeDirection, SlopePosition, Target};
pub use split::{permutation, split, split_indices};
pub use synthetic::{
    generate_synthetic, ground_truth_height, ground_truth_stock_volume, GroundTruth, GrowthParams,
    LinearCoefs, SyntheticConfig,
};
