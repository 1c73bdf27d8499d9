//! CSV ingest and export.
//!
//! The training schema is fixed:
//!
//! ```text
//! age,crown_density,slope,slope_position,slope_direction,height,stock_volume
//! ```
//!
//! Target cells may be empty (read as absent). Prediction inputs may drop
//! one or both target columns entirely, see [`load_prediction_input`].

use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use super::sample::{Dataset, Sample};
use crate::error::{Error, Result};

pub const FEATURE_COLUMNS: [&str; 5] = [
    "age",
    "crown_density",
    "slope",
    "slope_position",
    "slope_direction",
];

pub const HEADER: [&str; 7] = [
    "age",
    "crown_density",
    "slope",
    "slope_position",
    "slope_direction",
    "height",
    "stock_volume",
];

/// How strictly the header is matched.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Schema {
    /// Exactly [`HEADER`].
    Full,
    /// The five feature columns, optionally followed by `height` and/or
    /// `stock_volume` in schema order.
    FeaturesOnly,
}

pub fn load_csv(path: impl AsRef<Path>) -> Result<Dataset> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_csv(file, path.display().to_string(), Schema::Full)
}

pub fn load_prediction_input(path: impl AsRef<Path>) -> Result<Dataset> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_csv(file, path.display().to_string(), Schema::FeaturesOnly)
}

pub fn read_csv<R: Read>(reader: R, source: impl Into<String>, schema: Schema) -> Result<Dataset> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .from_reader(reader);

    let header: Vec<String> = rdr.headers()?.iter().map(str::to_owned).collect();
    let columns = resolve_columns(&header, schema)?;

    let mut samples = Vec::new();
    for (i, record) in rdr.records().enumerate() {
        let row = i + 1;
        let record = record?;
        if record.len() != columns.len() {
            return Err(Error::Row {
                row,
                column: "record",
                message: format!("expected {} fields, found {}", columns.len(), record.len()),
            });
        }
        let mut height = None;
        let mut stock_volume = None;
        for (col, cell) in columns.iter().zip(record.iter()).skip(5) {
            let value = if cell.is_empty() {
                None
            } else {
                Some(parse_num(cell, row, col)?)
            };
            match *col {
                "height" => height = value,
                _ => stock_volume = value,
            }
        }
        let sample = Sample {
            age: parse_num(&record[0], row, "age")?,
            crown_density: parse_num(&record[1], row, "crown_density")?,
            slope: parse_num(&record[2], row, "slope")?,
            slope_position: record[3].parse().map_err(|message| Error::Row {
                row,
                column: "slope_position",
                message,
            })?,
            slope_direction: record[4].parse().map_err(|message| Error::Row {
                row,
                column: "slope_direction",
                message,
            })?,
            height,
            stock_volume,
        };
        if let Some((column, message)) = sample.violation() {
            return Err(Error::Row {
                row,
                column,
                message,
            });
        }
        samples.push(sample);
    }
    Ok(Dataset::from_validated(samples, source))
}

fn resolve_columns(header: &[String], schema: Schema) -> Result<Vec<&'static str>> {
    let bad = || Error::Header {
        expected: match schema {
            Schema::Full => HEADER.join(","),
            Schema::FeaturesOnly => {
                format!("{}[,height][,stock_volume]", FEATURE_COLUMNS.join(","))
            }
        },
        found: header.join(","),
    };
    match schema {
        Schema::Full => {
            if header.iter().map(String::as_str).eq(HEADER) {
                Ok(HEADER.to_vec())
            } else {
                Err(bad())
            }
        }
        Schema::FeaturesOnly => {
            if header.len() < 5 || !header[..5].iter().map(String::as_str).eq(FEATURE_COLUMNS) {
                return Err(bad());
            }
            let extra: Vec<&str> = header[5..].iter().map(String::as_str).collect();
            let tail: &[&'static str] = match extra.as_slice() {
                [] => &[],
                ["height"] => &["height"],
                ["stock_volume"] => &["stock_volume"],
                ["height", "stock_volume"] => &["height", "stock_volume"],
                _ => return Err(bad()),
            };
            Ok(FEATURE_COLUMNS.iter().chain(tail).copied().collect())
        }
    }
}

fn parse_num(cell: &str, row: usize, column: &'static str) -> Result<f64> {
    let v: f64 = cell.parse().map_err(|_| Error::Row {
        row,
        column,
        message: format!("`{cell}` is not a number"),
    })?;
    if !v.is_finite() {
        return Err(Error::Row {
            row,
            column,
            message: format!("`{cell}` is not finite"),
        });
    }
    Ok(v)
}

/// Writes with the full schema header; numbers use the shortest decimal
/// form that parses back to the same `f64`.
pub fn write_csv<W: Write>(dataset: &Dataset, writer: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(writer);
    w.write_record(HEADER)?;
    let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
    for s in dataset.samples() {
        w.write_record([
            s.age.to_string(),
            s.crown_density.to_string(),
            s.slope.to_string(),
            s.slope_position.to_string(),
            s.slope_direction.to_string(),
            opt(s.height),
            opt(s.stock_volume),
        ])?;
    }
    w.flush().map_err(|e| Error::io("<csv writer>", e))?;
    Ok(())
}

pub fn save_csv(dataset: &Dataset, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    write_csv(dataset, file)
}
