//! Deterministic CSV and JSON serialization.
//!
//! Numbers in CSV are written as `{:.12e}` (lowercase, e.g. `7.152057757458e-10`,
//! `0.000000000000e0`). JSON uses serde's struct field order and shortest
//! round-trip floats.

use std::io::Write;

use serde::Serialize;

use crate::config::Format;
use crate::error::{Error, Result};
use crate::experiments::{SweepResult, SweepVariable};
use crate::scattering::Configuration;

/// One CSV cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Text(String),
    Bool(bool),
}

impl Cell {
    pub fn render(&self) -> String {
        match self {
            Cell::Num(x) => format!("{x:.12e}"),
            Cell::Int(n) => n.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
        }
    }
}

/// A flat table with a fixed header order.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

pub fn csv_bytes(table: &Table) -> Result<Vec<u8>> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    let io = |e: csv::Error| Error::Io(std::io::Error::other(e));
    w.write_record(&table.header).map_err(io)?;
    for row in &table.rows {
        if row.len() != table.header.len() {
            return Err(Error::NumericalFailure(format!(
                "row has {} cells, header has {}",
                row.len(),
                table.header.len()
            )));
        }
        w.write_record(row.iter().map(Cell::render)).map_err(io)?;
    }
    w.into_inner().map_err(|e| Error::Io(std::io::Error::other(e.to_string())))
}

pub fn json_bytes<T: Serialize>(value: &T) -> Result<Vec<u8>> {
    let mut out = serde_json::to_vec_pretty(value).map_err(|e| Error::Io(std::io::Error::other(e)))?;
    out.push(b'\n');
    Ok(out)
}

/// Sweep rows with the preset and configuration on every line.
pub fn sweep_table(r: &SweepResult) -> Table {
    let cavity = r.provenance.configuration == Configuration::WithOpticalCavity;
    let header = vec![
        "preset",
        "configuration",
        r.provenance.variable.column(),
        "eta",
        "reflection",
        "c_em",
        if cavity { "c_om" } else { "eta_m" },
        "g_hz",
        if cavity { "zeta_hz" } else { "xi_hz" },
        "valid",
    ];
    let rows = r
        .rows
        .iter()
        .map(|row| {
            let value = if r.provenance.variable == SweepVariable::LayerCount {
                Cell::Int(row.value as u64)
            } else {
                Cell::Num(row.value)
            };
            vec![
                Cell::Text(r.provenance.preset.clone()),
                Cell::Text(r.provenance.configuration.to_string()),
                value,
                Cell::Num(row.eta),
                Cell::Num(row.reflection),
                Cell::Num(row.c_em),
                Cell::Num(row.optical_cooperativity),
                Cell::Num(row.g_hz),
                Cell::Num(row.optical_coupling_hz),
                Cell::Bool(row.valid),
            ]
        })
        .collect();
    Table { header, rows }
}

pub fn emit_sweep(r: &SweepResult, format: Format) -> Result<Vec<u8>> {
    match format {
        Format::Csv => csv_bytes(&sweep_table(r)),
        Format::Json => json_bytes(r),
    }
}

/// Reads back a sweep written as JSON.
pub fn load_sweep_json(bytes: &[u8]) -> Result<SweepResult> {
    serde_json::from_slice(bytes).map_err(|e| Error::Io(std::io::Error::other(e)))
}

/// Writes to `path`, or to stdout when `None`.
pub fn write_output(bytes: &[u8], path: Option<&std::path::Path>) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, bytes)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()?;
        }
    }
    Ok(())
}
