//! One-column CSV ingestion and deterministic result writers.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::series::TimeSeries;

/// What the parser did with the file, for reporting.
#[derive(Debug, Clone, Default, serde::Serialize)]
pub struct IngestReport {
    pub rows: usize,
    pub skipped_header: bool,
    pub ignored_extra_columns: bool,
}

/// Reads a series from a file with one value per row. A single non-numeric
/// first row is treated as a header; a second column, when present, is
/// ignored (reported in the [`IngestReport`]).
pub fn ingest_csv(path: impl AsRef<Path>) -> Result<(TimeSeries, IngestReport)> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| {
        if e.kind() == std::io::ErrorKind::NotFound {
            Error::MissingDataset(path.display().to_string())
        } else {
            Error::Io(e)
        }
    })?;
    let mut report = IngestReport::default();
    let mut values = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let row = idx + 1;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split(',');
        let first = fields.next().unwrap_or("").trim();
        if fields.next().is_some() {
            report.ignored_extra_columns = true;
        }
        match first.parse::<f64>() {
            Ok(v) => values.push(v),
            Err(_) if row == 1 => {
                report.skipped_header = true;
            }
            Err(_) => {
                return Err(Error::Parse {
                    path: path.display().to_string(),
                    row,
                    message: format!("not a number: {first:?}"),
                });
            }
        }
    }
    if values.is_empty() {
        return Err(Error::Parse {
            path: path.display().to_string(),
            row: 0,
            message: "no numeric rows".into(),
        });
    }
    report.rows = values.len();
    let series = TimeSeries::with_origin(values, path.display().to_string())?;
    Ok((series, report))
}

/// Full-precision decimal cell: 17 significant digits, so identical runs
/// produce byte-identical files.
pub fn format_value(v: f64) -> String {
    format!("{v:.16e}")
}

/// One table entry, kept typed so both output formats stay faithful.
#[derive(Debug, Clone)]
pub enum Cell {
    Text(String),
    Int(i64),
    Num(f64),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Int(i) => i.to_string(),
            Cell::Num(v) => format_value(*v),
        }
    }

    fn json(&self) -> serde_json::Value {
        match self {
            Cell::Text(s) => serde_json::Value::String(s.clone()),
            Cell::Int(i) => serde_json::Value::from(*i),
            Cell::Num(v) => serde_json::Value::from(*v),
        }
    }
}

/// Result-file format of the table-producing commands.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Json,
}

/// Writes a result table either as CSV with a header row or as a JSON
/// array of objects keyed by the header.
pub fn write_table(
    path: impl AsRef<Path>,
    format: TableFormat,
    header: &[&str],
    rows: &[Vec<Cell>],
) -> Result<()> {
    match format {
        TableFormat::Csv => {
            let mut out = String::new();
            writeln_row(&mut out, header.iter().map(|s| s.to_string()));
            for row in rows {
                writeln_row(&mut out, row.iter().map(Cell::csv));
            }
            fs::write(path, out)?;
        }
        TableFormat::Json => {
            let objects: Vec<serde_json::Value> = rows
                .iter()
                .map(|row| {
                    let map: serde_json::Map<String, serde_json::Value> = header
                        .iter()
                        .zip(row)
                        .map(|(k, cell)| (k.to_string(), cell.json()))
                        .collect();
                    serde_json::Value::Object(map)
                })
                .collect();
            write_json(path, &objects)?;
        }
    }
    Ok(())
}

fn writeln_row(out: &mut String, cells: impl Iterator<Item = String>) {
    let mut first = true;
    for cell in cells {
        if !first {
            out.push(',');
        }
        let _ = write!(out, "{cell}");
        first = false;
    }
    out.push('\n');
}

/// Writes pretty-printed JSON metadata next to a result file.
pub fn write_json<T: serde::Serialize>(path: impl AsRef<Path>, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::Parse {
        path: path.as_ref().display().to_string(),
        row: 0,
        message: e.to_string(),
    })?;
    fs::write(path, text + "\n")?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_plain_column() {
        let dir = std::env::temp_dir().join("hankel_forecast_csv_test");
        let _ = std::fs::create_dir_all(&dir);
        let path = dir.join("plain.csv");
        std::fs::write(&path, "1.5\n2.5\n3.5\n").unwrap();
        let (series, report) = ingest_csv(&path).unwrap();
        assert_eq!(series.values(), &[1.5, 2.5, 3.5]);
        assert_eq!(report.rows, 3);
        assert!(!report.skipped_header);
    }

    #[test]
    fn skips_header_and_reports_extra_column() {
        let dir = std::env::temp_dir().join("hankel_forecast_csv_test");
        let _ = std::fs::create_dir_all(&dir);
        let path = dir.join("header.csv");
        std::fs::write(&path, "value,label\n1.0,a\n2.0,b\n3.0,c\n").unwrap();
        let (series, report) = ingest_csv(&path).unwrap();
        assert_eq!(series.len(), 3);
        assert!(report.skipped_header);
        assert!(report.ignored_extra_columns);
    }

    #[test]
    fn reports_bad_row_number() {
        let dir = std::env::temp_dir().join("hankel_forecast_csv_test");
        let _ = std::fs::create_dir_all(&dir);
        let path = dir.join("bad.csv");
        std::fs::write(&path, "1.0\n2.0\noops\n").unwrap();
        match ingest_csv(&path) {
            Err(Error::Parse { row, .. }) => assert_eq!(row, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn missing_file_is_a_missing_dataset() {
        let out = ingest_csv("/definitely/not/here.csv");
        assert!(matches!(out, Err(Error::MissingDataset(_))));
    }

    #[test]
    fn value_format_round_trips() {
        for v in [1.0, -2.5, 0.1, 247.38, 1e-12, 12345.6789] {
            let s = format_value(v);
            assert_eq!(s.parse::<f64>().unwrap(), v, "{s}");
        }
    }

    #[test]
    fn table_writes_both_formats() {
        let dir = std::env::temp_dir().join("hankel_forecast_csv_test");
        let _ = std::fs::create_dir_all(&dir);
        let rows = vec![vec![Cell::Text("a".into()), Cell::Int(3), Cell::Num(0.5)]];

        let csv_path = dir.join("table.csv");
        write_table(
            &csv_path,
            TableFormat::Csv,
            &["name", "count", "value"],
            &rows,
        )
        .unwrap();
        let text = std::fs::read_to_string(&csv_path).unwrap();
        assert_eq!(text, "name,count,value\na,3,5.0000000000000000e-1\n");

        let json_path = dir.join("table.json");
        write_table(
            &json_path,
            TableFormat::Json,
            &["name", "count", "value"],
            &rows,
        )
        .unwrap();
        let parsed: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
        assert_eq!(parsed[0]["count"], 3);
        assert_eq!(parsed[0]["value"], 0.5);
    }
}
