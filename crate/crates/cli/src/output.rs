//! CSV and JSON envelopes. Numbers in CSV are written as `{:.16e}` (17
//! significant digits, '.' separator). Metadata lines start with `#`; only
//! the `# timestamp:` line changes between identical runs.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use clap::ValueEnum;
use iontrap_core::experiments::{Column, SweepResult};
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::RunConfig;
use crate::error::{CliError, Result};

/// Relative `--out` paths, and the default file names, resolve under this
/// directory when it is set.
pub const OUTPUT_DIR_ENV: &str = "IONTRAP_OUTPUT_DIR";

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Self::Csv => "csv",
            Self::Json => "json",
        }
    }
}

/// Result of one subcommand before formatting.
#[derive(Clone, Debug, PartialEq)]
pub struct Output {
    pub command: &'static str,
    /// Resolved command parameters.
    pub spec: Value,
    /// Scalar results in display order.
    pub report: Vec<(String, Value)>,
    pub columns: Vec<Column>,
}

impl Output {
    pub fn new(command: &'static str, spec: Value) -> Self {
        Self { command, spec, report: Vec::new(), columns: Vec::new() }
    }

    pub fn from_sweep(command: &'static str, result: SweepResult) -> Self {
        let mut out = Self::new(command, result.spec);
        for (k, v) in result.summary {
            out.push(k, v);
        }
        out.columns = result.columns;
        out
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl Into<Value>) {
        self.report.push((key.into(), value.into()));
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.report.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }
}

/// Fixed-width scientific form used for every float in CSV.
pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

fn format_value(v: &Value) -> String {
    match v {
        Value::Number(n) if n.is_f64() => format_float(n.as_f64().expect("f64 number")),
        Value::Number(n) => n.to_string(),
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn unix_time() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0)
}

fn version() -> String {
    format!("iontrap-cli {}", env!("CARGO_PKG_VERSION"))
}

fn csv_bytes(rows: impl IntoIterator<Item = Vec<String>>) -> Result<Vec<u8>> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    for row in rows {
        w.write_record(&row).map_err(|e| CliError::io("csv", e.into()))?;
    }
    w.into_inner().map_err(|e| CliError::io("csv", e.into_error()))
}

pub fn render_csv(output: &Output, config: &RunConfig, timestamp: u64) -> Result<String> {
    let mut text = String::new();
    text.push_str(&format!("# {}\n", version()));
    text.push_str(&format!("# command: {}\n", output.command));
    text.push_str(&format!("# config_sha256: {}\n", config.hash()));
    text.push_str(&format!("# config: {}\n", config.canonical_json()));
    text.push_str(&format!("# spec: {}\n", output.spec));
    text.push_str(&format!("# timestamp: {timestamp}\n"));
    let body = if output.columns.is_empty() {
        let rows = std::iter::once(vec!["quantity".to_string(), "value".to_string()])
            .chain(output.report.iter().map(|(k, v)| vec![k.clone(), format_value(v)]));
        csv_bytes(rows)?
    } else {
        for (k, v) in &output.report {
            text.push_str(&format!("# result: {k} = {}\n", format_value(v)));
        }
        let header = output.columns.iter().map(|c| c.name.clone()).collect();
        let len = output.columns[0].values.len();
        let rows = (0..len).map(|i| output.columns.iter().map(|c| format_float(c.values[i])).collect());
        csv_bytes(std::iter::once(header).chain(rows))?
    };
    text.push_str(std::str::from_utf8(&body).expect("csv output is UTF-8"));
    Ok(text)
}

pub fn render_json(output: &Output, config: &RunConfig, timestamp: u64) -> String {
    let report: serde_json::Map<String, Value> = output.report.iter().cloned().collect();
    let doc = json!({
        "command": output.command,
        "metadata": {
            "version": version(),
            "config_sha256": config.hash(),
            "timestamp": timestamp,
        },
        "config": config.canonical_json(),
        "spec": output.spec,
        "report": report,
        "columns": output.columns,
    });
    serde_json::to_string_pretty(&doc).expect("json serializes") + "\n"
}

pub fn render(output: &Output, config: &RunConfig, format: Format) -> Result<String> {
    let ts = unix_time();
    match format {
        Format::Csv => render_csv(output, config, ts),
        Format::Json => Ok(render_json(output, config, ts)),
    }
}

/// Where the output goes; `None` means stdout.
pub fn destination(out: Option<&Path>, command: &str, format: Format) -> Option<PathBuf> {
    let dir = std::env::var_os(OUTPUT_DIR_ENV).map(PathBuf::from);
    match (out, dir) {
        (Some(p), Some(d)) if p.is_relative() => Some(d.join(p)),
        (Some(p), _) => Some(p.to_path_buf()),
        (None, Some(d)) => Some(d.join(format!("{command}.{}", format.extension()))),
        (None, None) => None,
    }
}

/// Writes to a temporary file next to `path`, then renames it into place.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let parent = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    std::fs::create_dir_all(&parent).map_err(|e| CliError::io(parent.display(), e))?;
    let mut tmp = tempfile::NamedTempFile::new_in(&parent).map_err(|e| CliError::io(parent.display(), e))?;
    tmp.write_all(contents.as_bytes()).map_err(|e| CliError::io(path.display(), e))?;
    tmp.persist(path).map_err(|e| CliError::io(path.display(), e.error))?;
    Ok(())
}
