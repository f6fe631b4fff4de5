//! CSV/JSON writers and the parameter sidecar.

use std::io::Write;
use std::path::{Path, PathBuf};

use aelgate::figures::Table;
use serde_json::{json, Value as Json};

use crate::error::{CliError, CliResult};
use crate::scenario::{Format, Prepared};

pub fn metadata_line() -> String {
    format!("aelgate {} run at {}", env!("CARGO_PKG_VERSION"), chrono::Utc::now().to_rfc3339())
}

pub fn render(table: &Table, format: Format, header: Option<&str>) -> CliResult<Vec<u8>> {
    match format {
        Format::Csv => {
            let mut buf = Vec::new();
            if let Some(h) = header {
                writeln!(buf, "# {h}").expect("writing to memory");
            }
            let mut w = csv::Writer::from_writer(buf);
            w.write_record(&table.columns)?;
            for row in &table.rows {
                w.write_record(row.iter().map(|v| v.to_string()))?;
            }
            w.flush().map_err(|e| CliError::io("CSV buffer", e))?;
            Ok(w.into_inner().map_err(|e| CliError::io("CSV buffer", e.into_error()))?)
        }
        Format::Json => {
            let mut doc = json!({ "columns": table.columns, "rows": table.rows });
            if let Some(h) = header {
                doc["metadata"] = Json::String(h.to_string());
            }
            let mut out = serde_json::to_vec_pretty(&doc)?;
            out.push(b'\n');
            Ok(out)
        }
    }
}

/// `out.csv` → `out.params.json`
pub fn sidecar_path(out: &Path) -> PathBuf {
    out.with_extension("params.json")
}

pub fn sidecar(prep: &Prepared, table: &Table, model: &Json, header: Option<&str>) -> CliResult<Vec<u8>> {
    let mut doc = json!({
        "command": prep.command.as_str(),
        "species": prep.species.key(),
        "parameters": prep.params.resolved(),
        "model": model,
        "columns": table.columns,
    });
    if let Some(f) = prep.figure {
        doc["figure"] = Json::String(f.as_str().to_string());
    }
    if let Some(h) = header {
        doc["metadata"] = Json::String(h.to_string());
    }
    let mut out = serde_json::to_vec_pretty(&doc)?;
    out.push(b'\n');
    Ok(out)
}

pub fn write_file(path: &Path, bytes: &[u8]) -> CliResult<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir.display(), e))?;
    }
    std::fs::write(path, bytes).map_err(|e| CliError::io(path.display(), e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use aelgate::figures::Value;

    fn table() -> Table {
        let mut t = Table::new(&["N", "note"]);
        t.push(vec![Value::Int(1), Value::Text("a, b".into())]);
        t
    }

    #[test]
    fn csv_quotes_and_header() {
        let text = String::from_utf8(render(&table(), Format::Csv, Some("meta")).unwrap()).unwrap();
        assert_eq!(text, "# meta\nN,note\n1,\"a, b\"\n");
    }

    #[test]
    fn json_rows() {
        let doc: Json = serde_json::from_slice(&render(&table(), Format::Json, None).unwrap()).unwrap();
        assert_eq!(doc["rows"][0][0], 1);
        assert!(doc.get("metadata").is_none());
    }

    #[test]
    fn sidecar_next_to_output() {
        assert_eq!(sidecar_path(Path::new("out/fig5a.csv")), PathBuf::from("out/fig5a.params.json"));
    }
}
