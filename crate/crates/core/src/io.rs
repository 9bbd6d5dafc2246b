//! CSV reading and writing for series and label vectors.
//!
//! Floats are written in `{:.16e}` so that a read-back is bit-exact and
//! reruns with the same seed produce identical bytes.

use std::io::{Read, Write};

use crate::assignment::Assignment;
use crate::error::{Result, SegError};
use crate::grid::GridPoint;
use crate::series::{ColumnRole, SeriesMatrix};

pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// Reads a headered CSV of floats; column roles come from the header names.
pub fn read_series<R: Read>(reader: R) -> Result<SeriesMatrix> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(reader);
    let roles: Vec<ColumnRole> = rdr.headers()?.iter().map(ColumnRole::from_header).collect();
    let mut rows = Vec::new();
    for (i, record) in rdr.records().enumerate() {
        let record = record?;
        let row = record
            .iter()
            .map(|v| {
                v.parse::<f64>()
                    .map_err(|e| SegError::Parse(format!("row {i}: {v:?}: {e}")))
            })
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }
    SeriesMatrix::new(rows, roles)
}

pub fn write_series<W: Write>(writer: W, series: &SeriesMatrix) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(series.roles().iter().map(|r| r.header()))?;
    for row in series.rows() {
        w.write_record(row.iter().map(|&x| format_float(x)))?;
    }
    w.flush()?;
    Ok(())
}

/// Reads `index,label` rows; indices must run `0..T` in order.
pub fn read_assignment<R: Read>(reader: R) -> Result<Assignment> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut labels = Vec::new();
    for (i, record) in rdr.records().enumerate() {
        let record = record?;
        let field = |k: usize| -> Result<usize> {
            let v = record
                .get(k)
                .ok_or_else(|| SegError::Parse(format!("row {i}: missing column {k}")))?;
            v.parse()
                .map_err(|e| SegError::Parse(format!("row {i}: {v:?}: {e}")))
        };
        if field(0)? != i {
            return Err(SegError::Parse(format!("row {i}: index out of order")));
        }
        labels.push(field(1)?);
    }
    Ok(Assignment::new(labels))
}

pub fn write_assignment<W: Write>(writer: W, assignment: &Assignment) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["index", "label"])?;
    for (t, label) in assignment.labels().iter().enumerate() {
        w.write_record([t.to_string(), label.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

/// One row per grid point: `n_grid,c_grid,cost,n_effective,c_effective,converged`.
/// Points without a result have empty cells after the grid coordinates.
pub fn write_grid<W: Write>(writer: W, points: &[GridPoint]) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record([
        "n_grid",
        "c_grid",
        "cost",
        "n_effective",
        "c_effective",
        "converged",
    ])?;
    for p in points {
        let mut record = vec![p.n_grid.to_string(), p.c_grid.to_string()];
        match &p.result {
            Some(r) => record.extend([
                format_float(r.cost),
                r.assignment.n_transitions().to_string(),
                r.assignment.n_distinct().to_string(),
                r.converged.to_string(),
            ]),
            None => record.extend([String::new(), String::new(), String::new(), String::new()]),
        }
        w.write_record(&record)?;
    }
    w.flush()?;
    Ok(())
}
