use std::fs::{self, File};
use std::path::Path;

use clap::ValueEnum;
use serde::Serialize;

use crate::failure::Failure;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

pub fn ensure_dir(dir: &Path) -> Result<(), Failure> {
    fs::create_dir_all(dir).map_err(|e| Failure::io(dir, e))
}

/// Writes `rows` as CSV with a header taken from the row type's fields.
pub fn write_csv<R: Serialize>(path: &Path, rows: impl IntoIterator<Item = R>) -> Result<(), Failure> {
    let file = File::create(path).map_err(|e| Failure::io(path, e))?;
    let mut w = csv::Writer::from_writer(file);
    for row in rows {
        w.serialize(row).map_err(|e| Failure::io(path, e))?;
    }
    w.flush().map_err(|e| Failure::io(path, e))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).expect("report serializes");
    fs::write(path, text).map_err(|e| Failure::io(path, e))
}

/// Parses and checks a list of evaluation times.
pub fn check_times(times: &[f64]) -> Result<Vec<f64>, Failure> {
    if times.is_empty() {
        return Err(Failure::Invalid("no times given".into()));
    }
    if let Some(t) = times.iter().find(|t| !(t.is_finite() && **t >= 0.0)) {
        return Err(Failure::Invalid(format!("time {t} must be finite and non-negative")));
    }
    let mut ts = times.to_vec();
    ts.sort_by(|a, b| a.total_cmp(b));
    ts.dedup();
    Ok(ts)
}
