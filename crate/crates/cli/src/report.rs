//! Machine-readable experiment outputs: a JSON summary plus CSV tables,
//! all written atomically (temp file + rename) with full-precision floats.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::Serialize;

use crate::config::ExperimentConfig;
use crate::error::CliError;

/// A named result value with its unit and what it reproduces ("custom" for
/// values with no fixed target).
#[derive(Debug, Clone, Serialize)]
pub struct Scalar {
    pub name: String,
    pub value: ScalarValue,
    pub unit: String,
    pub reference: String,
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum ScalarValue {
    Real(f64),
    Complex([f64; 2]),
}

impl From<f64> for ScalarValue {
    fn from(x: f64) -> Self {
        ScalarValue::Real(x)
    }
}

impl From<Complex64> for ScalarValue {
    fn from(z: Complex64) -> Self {
        ScalarValue::Complex([z.re, z.im])
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TableRef {
    pub name: String,
    pub path: PathBuf,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub scalars: Vec<Scalar>,
    pub tables: Vec<TableRef>,
}

impl ExperimentReport {
    pub fn new(config: ExperimentConfig) -> Self {
        Self {
            config,
            scalars: Vec::new(),
            tables: Vec::new(),
        }
    }

    pub fn push_scalar(
        &mut self,
        name: &str,
        value: impl Into<ScalarValue>,
        unit: &str,
        reference: &str,
    ) {
        self.scalars.push(Scalar {
            name: name.to_string(),
            value: value.into(),
            unit: unit.to_string(),
            reference: reference.to_string(),
        });
    }

    /// Writes a CSV table into `dir` and records it in the report.
    /// Floats use 17 significant digits so they round-trip exactly.
    pub fn write_table(
        &mut self,
        dir: &Path,
        name: &str,
        header: &[&str],
        rows: impl Iterator<Item = Vec<CsvField>>,
    ) -> Result<(), CliError> {
        let filename = format!("{name}.csv");
        let path = dir.join(&filename);
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer.write_record(header).map_err(csv_err)?;
        for row in rows {
            writer
                .write_record(row.iter().map(CsvField::render))
                .map_err(csv_err)?;
        }
        let bytes = writer
            .into_inner()
            .map_err(|e| CliError::Io(format!("flushing CSV: {e}")))?;
        write_atomic(&path, &bytes)?;
        self.tables.push(TableRef {
            name: name.to_string(),
            path: PathBuf::from(filename),
        });
        Ok(())
    }

    /// Writes the JSON summary as `report.json` in `dir`.
    pub fn write_summary(&self, dir: &Path) -> Result<PathBuf, CliError> {
        let path = dir.join("report.json");
        let mut bytes = serde_json::to_vec_pretty(self)
            .map_err(|e| CliError::Computation(format!("serializing report: {e}")))?;
        bytes.push(b'\n');
        write_atomic(&path, &bytes)?;
        Ok(path)
    }
}

#[derive(Debug, Clone)]
pub enum CsvField {
    Float(f64),
    Int(u64),
}

impl CsvField {
    fn render(&self) -> String {
        match self {
            // 17 significant digits: lossless f64 round-trip
            CsvField::Float(x) => format!("{x:.16e}"),
            CsvField::Int(n) => n.to_string(),
        }
    }
}

fn csv_err(e: csv::Error) -> CliError {
    CliError::Io(format!("writing CSV: {e}"))
}

fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let dir = path.parent().unwrap_or(Path::new("."));
    fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("creating {}: {e}", dir.display())))?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .map_err(|e| CliError::Io(format!("creating temp file in {}: {e}", dir.display())))?;
    tmp.write_all(bytes)
        .map_err(|e| CliError::Io(format!("writing {}: {e}", path.display())))?;
    tmp.persist(path)
        .map_err(|e| CliError::Io(format!("renaming into {}: {e}", path.display())))?;
    Ok(())
}
