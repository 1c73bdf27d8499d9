use std::fmt::Write as _;
use std::str::FromStr;
use std::time::Duration;

use super::SweepConfig;
use crate::dataset::Target;
use crate::training::{StopReason, TrialResult};

pub const COLUMNS: [&str; 4] = [
    "Model",
    "RMS Error",
    "Training Time",
    "Reason Training Stopped",
];
/// Extra trailing CSV column.
pub const TRAIN_RMS_COLUMN: &str = "Train RMS Error";

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub model_label: String,
    /// Mean test-set RMSE over trials.
    pub rms_error: f64,
    /// Mean training-set RMSE over trials.
    pub rms_train: f64,
    pub training_time: Duration,
    pub stop_reason: StopReason,
    pub trials: Vec<TrialResult>,
    /// Digest of the test split this row was scored on.
    pub test_digest: String,
}

impl SweepRow {
    pub fn new(
        model_label: impl Into<String>,
        rms_error: f64,
        training_time: Duration,
        stop_reason: StopReason,
    ) -> Self {
        Self {
            model_label: model_label.into(),
            rms_error,
            rms_train: f64::NAN,
            training_time,
            stop_reason,
            trials: Vec::new(),
            test_digest: String::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub target: Target,
    pub rows: Vec<SweepRow>,
    pub best: usize,
    pub config: SweepConfig,
}

/// Index of the smallest `rms_error`; the earliest row wins ties, so Linear
/// beats GRNN beats MLFN and fewer nodes beat more. NaN never wins unless
/// every row is NaN.
pub fn best_row_index(rows: &[SweepRow]) -> usize {
    let key = |r: &SweepRow| {
        if r.rms_error.is_nan() {
            f64::INFINITY
        } else {
            r.rms_error
        }
    };
    let mut best = 0;
    for (i, r) in rows.iter().enumerate().skip(1) {
        if key(r) < key(&rows[best]) {
            best = i;
        }
    }
    best
}

impl SweepReport {
    pub fn new(target: Target, rows: Vec<SweepRow>, config: SweepConfig) -> Self {
        let best = best_row_index(&rows);
        Self {
            target,
            rows,
            best,
            config,
        }
    }

    pub fn best_row(&self) -> &SweepRow {
        &self.rows[self.best]
    }

    pub fn row(&self, label: &str) -> Option<&SweepRow> {
        self.rows.iter().find(|r| r.model_label == label)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Text,
    Csv,
}

impl FromStr for TableFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(TableFormat::Text),
            "csv" => Ok(TableFormat::Csv),
            other => Err(format!("unknown format `{other}` (text | csv)")),
        }
    }
}

/// `h:mm:ss`, seconds truncated.
pub fn format_hms(d: Duration) -> String {
    let s = d.as_secs();
    format!("{}:{:02}:{:02}", s / 3600, (s / 60) % 60, s % 60)
}

pub fn format_rms(v: f64) -> String {
    format!("{v:.2}")
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_owned()
    }
}

/// Text: left-aligned columns separated by two spaces, RMS to 2 decimals.
/// CSV: the same four columns plus [`TRAIN_RMS_COLUMN`], RMS values in
/// shortest round-trip form. Both end every line with `\n`.
pub fn render_table(r: &SweepReport, format: TableFormat) -> String {
    match format {
        TableFormat::Text => render_text(r),
        TableFormat::Csv => render_csv(r),
    }
}

fn render_text(r: &SweepReport) -> String {
    let cells: Vec<[String; 4]> = r
        .rows
        .iter()
        .map(|row| {
            [
                row.model_label.clone(),
                format_rms(row.rms_error),
                format_hms(row.training_time),
                row.stop_reason.to_string(),
            ]
        })
        .collect();
    let mut widths = COLUMNS.map(str::len);
    for c in &cells {
        for (w, cell) in widths.iter_mut().zip(c) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |fields: [&str; 4]| {
        let mut l = String::new();
        for (i, f) in fields.iter().enumerate() {
            if i + 1 < fields.len() {
                let _ = write!(l, "{f:<w$}  ", w = widths[i]);
            } else {
                l.push_str(f);
            }
        }
        out.push_str(l.trim_end());
        out.push('\n');
    };
    line(COLUMNS);
    for c in &cells {
        line([&c[0], &c[1], &c[2], &c[3]]);
    }
    out
}

fn render_csv(r: &SweepReport) -> String {
    let mut out = format!("{},{}\n", COLUMNS.join(","), TRAIN_RMS_COLUMN);
    for row in &r.rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            csv_field(&row.model_label),
            row.rms_error,
            format_hms(row.training_time),
            row.stop_reason,
            row.rms_train
        );
    }
    out
}
