//! Deterministic JSON and CSV output.

use std::io;
use std::path::{Path, PathBuf};

use pseudo_einstein::transitivity::RowReport;
use serde::Serialize;
use serde_json::Value;

/// Directory for `report` output when `--out` is not given.
pub const REPORT_DIR_ENV: &str = "PSEUDO_EINSTEIN_REPORT_DIR";

/// Converts to a JSON value.  Maps are ordered by key, so equal inputs give
/// byte-identical text.
pub fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

/// One record per line.
pub fn to_line<T: Serialize>(v: &T) -> String {
    to_value(v).to_string()
}

pub fn to_pretty<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(&to_value(v)).expect("value serializes")
}

/// `--out`, else the environment variable, else the current directory.
pub fn report_dir(explicit: Option<&Path>) -> PathBuf {
    explicit
        .map(Path::to_path_buf)
        .or_else(|| std::env::var_os(REPORT_DIR_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."))
}

pub fn write_json<T: Serialize>(dir: &Path, name: &str, records: &[T]) -> io::Result<PathBuf> {
    std::fs::create_dir_all(dir)?;
    let path = dir.join(name);
    let mut text = to_pretty(&records);
    text.push('\n');
    std::fs::write(&path, text)?;
    Ok(path)
}

/// Table sweep as CSV: one line per row report.
pub fn rows_csv(reports: &[RowReport]) -> io::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["table", "row", "params", "space", "ambient", "g", "h", "sum", "pass", "failures"])?;
    for r in reports {
        w.write_record([
            r.table.to_string(),
            r.row.to_string(),
            r.params.to_string(),
            r.space.clone(),
            r.dims.ambient.to_string(),
            r.dims.g.to_string(),
            r.dims.h.to_string(),
            r.dims.sum.to_string(),
            r.pass.to_string(),
            r.failures.join("; "),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv is utf-8"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_is_empty_array() {
        let v: Vec<u8> = Vec::new();
        assert_eq!(to_pretty(&v), "[]");
    }

    #[test]
    fn keys_are_sorted() {
        #[derive(Serialize)]
        struct R {
            zeta: u8,
            alpha: u8,
        }
        assert_eq!(to_line(&R { zeta: 1, alpha: 2 }), r#"{"alpha":2,"zeta":1}"#);
    }
}
