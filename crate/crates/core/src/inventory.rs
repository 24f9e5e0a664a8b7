//! Resource inventory files: comma-separated rows with the header
//! `id,speed_mbs,reliability_pct,concentration_pct`, trivially producible
//! by monitoring scripts.

use std::collections::HashSet;
use std::path::Path;

use thiserror::Error;

use crate::resource::ResourceMetrics;

pub const INVENTORY_HEADER: [&str; 4] = ["id", "speed_mbs", "reliability_pct", "concentration_pct"];

#[derive(Debug, Error)]
pub enum InventoryError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid inventory: {0}")]
    Csv(#[from] csv::Error),
    #[error("header must be exactly `id,speed_mbs,reliability_pct,concentration_pct`, got `{0}`")]
    Header(String),
    #[error("line {line}: expected 4 fields, got {got}")]
    FieldCount { line: u64, got: usize },
    #[error("line {line}: {field} {value:?} is not a number")]
    NotANumber { line: u64, field: &'static str, value: String },
    #[error("line {line}: {message}")]
    Range { line: u64, message: String },
    #[error("line {line}: duplicate resource id {id:?}")]
    DuplicateId { line: u64, id: String },
    #[error("line {line}: resource id must not be empty")]
    EmptyId { line: u64 },
}

/// Parses inventory text into `(id, metrics)` rows, order preserved.
pub fn parse_inventory(text: &str) -> Result<Vec<(String, ResourceMetrics)>, InventoryError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());

    let header = reader.headers()?.clone();
    if header.iter().ne(INVENTORY_HEADER) {
        return Err(InventoryError::Header(header.iter().collect::<Vec<_>>().join(",")));
    }

    let mut rows = Vec::new();
    let mut seen = HashSet::new();
    for record in reader.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() != 4 {
            return Err(InventoryError::FieldCount { line, got: record.len() });
        }
        let id = record[0].to_string();
        if id.is_empty() {
            return Err(InventoryError::EmptyId { line });
        }
        if !seen.insert(id.clone()) {
            return Err(InventoryError::DuplicateId { line, id });
        }
        let speed = parse_field(&record[1], "speed_mbs", line)?;
        let reliability = parse_field(&record[2], "reliability_pct", line)?;
        let concentration = parse_field(&record[3], "concentration_pct", line)?;
        let metrics = ResourceMetrics::new(speed, reliability, concentration)
            .map_err(|err| InventoryError::Range { line, message: err.to_string() })?;
        rows.push((id, metrics));
    }
    Ok(rows)
}

fn parse_field(raw: &str, field: &'static str, line: u64) -> Result<f64, InventoryError> {
    raw.parse().map_err(|_| InventoryError::NotANumber {
        line,
        field,
        value: raw.to_string(),
    })
}

/// Reads and parses an inventory file.
pub fn load_inventory(path: &Path) -> Result<Vec<(String, ResourceMetrics)>, InventoryError> {
    let text = std::fs::read_to_string(path).map_err(|source| InventoryError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_inventory(&text)
}
