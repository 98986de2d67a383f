//! Tabulated sweep results and their CSV + metadata-sidecar emission.
//!
//! CSV layout: one header row of column names, then data rows. Floats are
//! rendered with 17 significant digits so parsing them back reproduces the
//! exact bit pattern; undefined quantities are empty cells, never NaN. A
//! sibling `<stem>.meta.json` file records the provenance (tool version,
//! timestamp, preset, config echo, grid notes).

use std::path::Path;

use serde::Serialize;

use crate::error::CliError;

/// Run provenance recorded next to every CSV. Only `generated_at` differs
/// between identical runs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Provenance {
    pub tool: String,
    pub version: String,
    pub generated_at: String,
    pub preset: Option<String>,
    pub kbt: f64,
    pub points: usize,
    pub notes: Vec<String>,
    pub config: String,
}

impl Provenance {
    pub fn new(
        preset: Option<String>,
        kbt: f64,
        points: usize,
        notes: Vec<String>,
        config: String,
    ) -> Self {
        Provenance {
            tool: "optowork".to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            generated_at: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
            preset,
            kbt,
            points,
            notes,
            config,
        }
    }
}

/// A rectangular table of sweep results. `None` cells mark quantities that
/// are undefined at that row (for example a maximal work outside its
/// domain).
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Option<f64>>>,
    pub provenance: Provenance,
}

#[derive(Serialize)]
struct MetaDocument<'a> {
    #[serde(flatten)]
    provenance: &'a Provenance,
    columns: &'a [String],
    rows: usize,
}

impl Dataset {
    pub fn new(
        columns: Vec<String>,
        rows: Vec<Vec<Option<f64>>>,
        provenance: Provenance,
    ) -> Result<Self, CliError> {
        for (i, row) in rows.iter().enumerate() {
            if row.len() != columns.len() {
                return Err(CliError::config(format!(
                    "row {i} has {} cells, expected {}",
                    row.len(),
                    columns.len()
                )));
            }
        }
        Ok(Dataset {
            columns,
            rows,
            provenance,
        })
    }

    /// Writes the CSV and its `.meta.json` sidecar. The CSV bytes depend
    /// only on the data, so identical sweeps produce identical files.
    pub fn emit_csv(&self, path: &Path) -> Result<(), CliError> {
        let mut writer = csv::Writer::from_path(path)
            .map_err(|e| CliError::io(format!("cannot write {}: {e}", path.display())))?;
        writer
            .write_record(&self.columns)
            .map_err(|e| CliError::io(e.to_string()))?;
        for row in &self.rows {
            let record: Vec<String> = row
                .iter()
                .map(|cell| cell.map(format_float).unwrap_or_default())
                .collect();
            writer
                .write_record(&record)
                .map_err(|e| CliError::io(e.to_string()))?;
        }
        writer.flush().map_err(|e| CliError::io(e.to_string()))?;

        let meta = MetaDocument {
            provenance: &self.provenance,
            columns: &self.columns,
            rows: self.rows.len(),
        };
        let json = serde_json::to_string_pretty(&meta).map_err(|e| CliError::io(e.to_string()))?;
        std::fs::write(meta_path(path), json + "\n")
            .map_err(|e| CliError::io(format!("cannot write metadata: {e}")))?;
        Ok(())
    }
}

/// Sidecar path: the CSV path with its extension replaced by `meta.json`.
pub fn meta_path(csv_path: &Path) -> std::path::PathBuf {
    csv_path.with_extension("meta.json")
}

/// 17 significant digits: enough for f64 round trips, few enough to be
/// deterministic.
pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

/// Column names and data rows parsed back from a CSV file.
pub type ParsedCsv = (Vec<String>, Vec<Vec<Option<f64>>>);

/// Reads back a CSV written by [`Dataset::emit_csv`]: header plus rows with
/// empty cells as `None`.
pub fn read_csv(path: &Path) -> Result<ParsedCsv, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_path(path)
        .map_err(|e| CliError::io(format!("cannot read {}: {e}", path.display())))?;
    let columns: Vec<String> = reader
        .headers()
        .map_err(|e| CliError::io(e.to_string()))?
        .iter()
        .map(str::to_string)
        .collect();
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| CliError::io(e.to_string()))?;
        let row = record
            .iter()
            .map(|cell| {
                if cell.is_empty() {
                    Ok(None)
                } else {
                    cell.parse::<f64>()
                        .map(Some)
                        .map_err(|_| CliError::io(format!("bad float in CSV: {cell:?}")))
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    Ok((columns, rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn provenance() -> Provenance {
        Provenance::new(None, 1.0, 3, vec![], "system = 1\n".into())
    }

    #[test]
    fn floats_round_trip_bit_exactly() {
        for v in [
            0.1,
            1.0 / 3.0,
            std::f64::consts::PI,
            1.852580319684945,
            -2.5e-300,
            1e300,
            0.0,
        ] {
            let parsed: f64 = format_float(v).parse().unwrap();
            assert_eq!(parsed.to_bits(), v.to_bits(), "value {v}");
        }
    }

    #[test]
    fn rejects_ragged_rows() {
        let bad = Dataset::new(
            vec!["a".into(), "b".into()],
            vec![vec![Some(1.0)]],
            provenance(),
        );
        assert!(bad.is_err());
    }

    #[test]
    fn empty_dataset_writes_header_only() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("empty.csv");
        let d = Dataset::new(vec!["n_th".into(), "W0".into()], vec![], provenance()).unwrap();
        d.emit_csv(&path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text, "n_th,W0\n");
        assert!(meta_path(&path).exists());
    }

    #[test]
    fn undefined_cells_are_empty_not_nan() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cells.csv");
        let d = Dataset::new(
            vec!["x".into(), "W0_max".into()],
            vec![vec![Some(1.0), None], vec![Some(2.0), Some(0.25)]],
            provenance(),
        )
        .unwrap();
        d.emit_csv(&path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(!text.contains("NaN"));
        assert!(text.lines().nth(1).unwrap().ends_with(','));
        let (columns, rows) = read_csv(&path).unwrap();
        assert_eq!(columns, d.columns);
        assert_eq!(rows, d.rows);
    }

    #[test]
    fn meta_sidecar_records_provenance() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.csv");
        let d = Dataset::new(vec!["x".into()], vec![vec![Some(1.5)]], provenance()).unwrap();
        d.emit_csv(&path).unwrap();
        let meta: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(meta_path(&path)).unwrap()).unwrap();
        assert_eq!(meta["tool"], "optowork");
        assert_eq!(meta["rows"], 1);
        assert_eq!(meta["config"], "system = 1\n");
        assert!(meta["generated_at"].as_str().unwrap().ends_with('Z'));
    }
}
