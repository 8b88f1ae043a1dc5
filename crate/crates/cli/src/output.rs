//! Table assembly and the CSV / JSON writers.
//!
//! CSV is a header row plus comma-separated values with LF line endings;
//! floats are written in Rust's shortest round-trip decimal form (up to 17
//! significant digits), so output files are byte-stable for identical
//! config and seed and lose no precision. JSON follows the fixed schema
//! {"command", "config", "results", "checks"} with field order preserved.

use std::io::Write;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::config::Resolved;
use crate::CliError;

/// One table cell; `Empty` renders as an empty CSV field / JSON null.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Float(f64),
    Int(u64),
    Text(String),
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Float(v) => format!("{v}"),
            Cell::Int(v) => format!("{v}"),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Float(v) => serde_json::Number::from_f64(*v)
                .map(Value::Number)
                .unwrap_or(Value::Null),
            Cell::Int(v) => Value::Number((*v).into()),
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Empty => Value::Null,
        }
    }
}

/// Named tolerance check, serialized in this exact field order.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub worst: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Everything a command produces.
#[derive(Debug, Clone)]
pub struct CommandOutput {
    pub config: Resolved,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub checks: Vec<Check>,
}

impl CommandOutput {
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            debug_assert_eq!(row.len(), self.columns.len());
            let line: Vec<String> = row.iter().map(Cell::csv).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Report<'a> {
            command: &'static str,
            config: &'a Resolved,
            results: Vec<Map<String, Value>>,
            checks: &'a [Check],
        }
        let results = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = Map::new();
                for (name, cell) in self.columns.iter().zip(row) {
                    obj.insert((*name).to_string(), cell.json());
                }
                obj
            })
            .collect();
        let report = Report {
            command: self.config.command.as_str(),
            config: &self.config,
            results,
            checks: &self.checks,
        };
        let mut text = serde_json::to_string_pretty(&report).expect("report serialization");
        text.push('\n');
        text
    }

    /// Standalone JSON block for the checks, printed to stdout when the
    /// table itself goes out as CSV.
    pub fn checks_json(&self) -> String {
        #[derive(Serialize)]
        struct Block<'a> {
            command: &'static str,
            checks: &'a [Check],
        }
        serde_json::to_string_pretty(&Block {
            command: self.config.command.as_str(),
            checks: &self.checks,
        })
        .expect("checks serialization")
    }
}

/// Write rendered text to --output or stdout.
pub fn write_rendered(config: &Resolved, text: &str) -> Result<(), CliError> {
    match &config.output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Config(format!("cannot write {path}: {e}"))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| CliError::Config(format!("cannot write to stdout: {e}")))
        }
    }
}
