//! Rendering of command results as text, JSON or CSV.

use std::io::Write;

use anyhow::Result;
use serde::Serialize;
use serde_json::Value;

use crate::config::Format;

/// Reproducibility header carried by every output.
#[derive(Clone, Debug, Serialize)]
pub struct Header {
    pub tool: String,
    pub version: String,
    pub field: String,
    pub config: String,
}

/// A rectangular table with a header row.
#[derive(Clone, Debug, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table { columns: columns.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push<I: IntoIterator<Item = S>, S: ToString>(&mut self, row: I) {
        self.rows.push(row.into_iter().map(|s| s.to_string()).collect());
    }

    fn write_text(&self, out: &mut String) {
        let widths: Vec<usize> = (0..self.columns.len())
            .map(|c| self.rows.iter().map(|r| r[c].len()).chain([self.columns[c].len()]).max().unwrap_or(0))
            .collect();
        let line = |cells: &[String], out: &mut String| {
            let parts: Vec<String> = cells.iter().zip(&widths).map(|(s, &w)| format!("{s:>w$}")).collect();
            out.push_str(parts.join("  ").trim_end());
            out.push('\n');
        };
        line(&self.columns, out);
        for r in &self.rows {
            line(r, out);
        }
    }
}

/// What a command produced.
#[derive(Clone, Debug)]
pub struct Report {
    /// Lines of `key: value` summary, in display order.
    pub summary: Vec<(String, String)>,
    /// The main table; commands without one use the summary as a two-column table.
    pub table: Option<Table>,
    /// Structured form of the whole result for JSON output.
    pub json: Value,
    /// Failed checks, each naming both disagreeing values.
    pub failures: Vec<String>,
}

impl Report {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn render(&self, header: &Header, format: Format) -> Result<String> {
        let mut out = String::new();
        match format {
            Format::Json => {
                let doc = serde_json::json!({
                    "header": header,
                    "result": self.json,
                    "ok": self.ok(),
                    "failures": self.failures,
                });
                out = serde_json::to_string_pretty(&doc)?;
                out.push('\n');
            }
            Format::Text | Format::Csv => {
                out.push_str(&format!("# {} {}\n# field: {}\n# config: {}\n", header.tool, header.version, header.field, header.config));
                if format == Format::Text {
                    let kw = self.summary.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                    for (k, v) in &self.summary {
                        out.push_str(&format!("{k:<kw$}  {v}\n"));
                    }
                    if let Some(t) = &self.table {
                        out.push('\n');
                        t.write_text(&mut out);
                    }
                    for f in &self.failures {
                        out.push_str(&format!("FAILED: {f}\n"));
                    }
                } else {
                    let table = match &self.table {
                        Some(t) => t.clone(),
                        None => {
                            let mut t = Table::new(&["key", "value"]);
                            for (k, v) in &self.summary {
                                t.push([k, v]);
                            }
                            t
                        }
                    };
                    let mut w = csv::Writer::from_writer(Vec::new());
                    w.write_record(&table.columns)?;
                    for r in &table.rows {
                        w.write_record(r)?;
                    }
                    out.push_str(std::str::from_utf8(&w.into_inner()?)?);
                    if self.table.is_some() {
                        for (k, v) in &self.summary {
                            out.push_str(&format!("# {k}: {v}\n"));
                        }
                    }
                    for f in &self.failures {
                        out.push_str(&format!("# FAILED: {f}\n"));
                    }
                }
            }
        }
        Ok(out)
    }
}

pub fn emit(text: &str, path: Option<&std::path::Path>) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}
