//! Result rows and their CSV serialization.

use std::io::Write;
use std::path::Path;

use crate::error::HarnessError;

/// One experiment outcome row. `criterion_trace` always has exactly
/// `stop_index` entries; `wall_time_ms` is the criterion-loop wall time (0
/// when timing is suppressed for byte-reproducible output).
#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub experiment: String,
    pub method: String,
    pub replicate: usize,
    pub seed: u64,
    pub stop_index: usize,
    pub criterion_trace: Vec<f64>,
    pub metric: String,
    pub value: f64,
    pub wall_time_ms: f64,
}

pub const CSV_HEADER: &str =
    "experiment,method,replicate,seed,stop_index,criterion_trace,metric,value,wall_time_ms";

/// 17 significant digits: enough to round-trip any f64 bit-exactly.
fn full_precision(value: f64) -> String {
    format!("{value:.16e}")
}

fn render(record: &RunRecord) -> String {
    let trace = record
        .criterion_trace
        .iter()
        .map(|v| full_precision(*v))
        .collect::<Vec<_>>()
        .join(";");
    format!(
        "{},{},{},{},{},{},{},{},{:.3}",
        record.experiment,
        record.method,
        record.replicate,
        record.seed,
        record.stop_index,
        trace,
        record.metric,
        full_precision(record.value),
        record.wall_time_ms
    )
}

/// Writes the records as UTF-8 CSV with LF line endings and the exact
/// canonical header.
pub fn write_csv(records: &[RunRecord], path: &Path) -> Result<(), HarnessError> {
    let mut out = Vec::with_capacity(64 * (records.len() + 1));
    out.extend_from_slice(CSV_HEADER.as_bytes());
    out.push(b'\n');
    for record in records {
        out.extend_from_slice(render(record).as_bytes());
        out.push(b'\n');
    }
    let mut file = std::fs::File::create(path).map_err(|source| HarnessError::Io {
        path: path.display().to_string(),
        source,
    })?;
    file.write_all(&out).map_err(|source| HarnessError::Io {
        path: path.display().to_string(),
        source,
    })?;
    Ok(())
}
