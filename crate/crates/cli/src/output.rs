//! Machine-readable output: one JSON document or one CSV table per
//! invocation, built fully in memory so identical invocations print
//! identical bytes.

use clap::ValueEnum;
use serde::Serialize;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Top-level record shared by every command. Numbers are exact integers
/// throughout; nothing is ever emitted as floating point.
#[derive(Serialize)]
pub struct Output<P: Serialize, R: Serialize, S: Serialize> {
    pub schema_version: &'static str,
    pub command: &'static str,
    pub params: P,
    pub rows: Vec<R>,
    pub summary: S,
}

impl<P: Serialize, R: Serialize, S: Serialize> Output<P, R, S> {
    pub fn new(command: &'static str, params: P, rows: Vec<R>, summary: S) -> Self {
        Output {
            schema_version: SCHEMA_VERSION,
            command,
            params,
            rows,
            summary,
        }
    }

    /// Renders the record; CSV keeps only the table with a header row and a
    /// stable column order, JSON carries the whole record.
    pub fn render(&self, format: Format, header: &str, mut csv_row: impl FnMut(&R) -> String) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("serializable output");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut s = String::new();
                s.push_str(header);
                s.push('\n');
                for row in &self.rows {
                    s.push_str(&csv_row(row));
                    s.push('\n');
                }
                s
            }
        }
    }
}

pub fn opt_cell(v: Option<u64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}
