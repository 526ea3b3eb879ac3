//! CSV and JSON export of sweeps, solution sets and constants.

use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::counting::{CriticalConstants, SolutionSet, SweepRow};

#[derive(Debug, Error)]
pub enum TableError {
    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("CSV encoding failed: {0}")]
    Csv(#[from] csv::Error),
    #[error("JSON encoding failed: {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Json,
}

impl FromStr for TableFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(TableFormat::Csv),
            "json" => Ok(TableFormat::Json),
            other => Err(format!("unknown table format `{other}` (expected csv or json)")),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub enum Table<'a> {
    Sweep(&'a [SweepRow]),
    Solutions(&'a SolutionSet),
    Constants(&'a CriticalConstants),
}

#[derive(Serialize)]
struct SolutionRow {
    index: usize,
    class_id: usize,
    family: String,
    subfamily: String,
    a: f64,
    b: f64,
    negated: bool,
    multiplicity: String,
}

#[derive(Serialize)]
struct ConstantRow {
    name: &'static str,
    value: f64,
    residual: Option<f64>,
}

fn csv_string<T: Serialize>(rows: impl IntoIterator<Item = T>) -> Result<String, TableError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    let bytes = w.into_inner().map_err(|e| TableError::Csv(e.into_error().into()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn sweep_csv(rows: &[SweepRow]) -> Result<String, TableError> {
    if rows.is_empty() {
        // the header is derived from the first record
        return Ok("h,raw_count,deduped_count,n_1a,n_1b,n_2a,n_2b,n_1a_neg,n_2a_neg,tangential\n".into());
    }
    csv_string(rows)
}

fn solutions_csv(set: &SolutionSet) -> Result<String, TableError> {
    let rows = set.solutions.iter().enumerate().map(|(index, s)| SolutionRow {
        index,
        class_id: s.class_id,
        family: s.catenoid.profile.family.to_string(),
        subfamily: s.catenoid.subfamily.map(|sf| sf.to_string()).unwrap_or_default(),
        a: s.catenoid.profile.a,
        b: s.catenoid.profile.b,
        negated: s.catenoid.profile.negated,
        multiplicity: format!("{:?}", s.multiplicity).to_lowercase(),
    });
    let text = csv_string(rows)?;
    if text.is_empty() {
        return Ok("index,class_id,family,subfamily,a,b,negated,multiplicity\n".into());
    }
    Ok(text)
}

fn constants_csv(c: &CriticalConstants) -> Result<String, TableError> {
    let r = &c.residuals;
    csv_string([
        ConstantRow {
            name: "c1_catenary",
            value: c.c1_catenary,
            residual: Some(r.c1_catenary),
        },
        ConstantRow {
            name: "u_star",
            value: c.u_star,
            residual: Some(r.u_star),
        },
        ConstantRow {
            name: "h_star_1a",
            value: c.h_star_1a,
            residual: Some(r.h_star_1a),
        },
        ConstantRow {
            name: "h_star_2a",
            value: c.h_star_2a,
            residual: Some(r.h_star_2a),
        },
        ConstantRow {
            name: "onset_1b",
            value: c.onset_1b,
            residual: None,
        },
        ConstantRow {
            name: "onset_2b",
            value: c.onset_2b,
            residual: None,
        },
        ConstantRow {
            name: "c0",
            value: c.c0,
            residual: None,
        },
    ])
}

/// Pretty JSON with shortest round-trip floats.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> Result<String, TableError> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn render_table(table: Table<'_>, format: TableFormat) -> Result<String, TableError> {
    match (table, format) {
        (Table::Sweep(rows), TableFormat::Csv) => sweep_csv(rows),
        (Table::Sweep(rows), TableFormat::Json) => to_json(rows),
        (Table::Solutions(set), TableFormat::Csv) => solutions_csv(set),
        (Table::Solutions(set), TableFormat::Json) => to_json(set),
        (Table::Constants(c), TableFormat::Csv) => constants_csv(c),
        (Table::Constants(c), TableFormat::Json) => to_json(c),
    }
}

pub fn export_table(table: Table<'_>, path: impl AsRef<Path>, format: TableFormat) -> Result<(), TableError> {
    let text = render_table(table, format)?;
    let path = path.as_ref();
    fs::write(path, text).map_err(|source| TableError::Io {
        path: path.to_path_buf(),
        source,
    })
}
