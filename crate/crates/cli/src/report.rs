//! Verification rows, the JSON summary and CSV tables with `#` header lines.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Serialize)]
pub struct ReportRow {
    pub test_id: String,
    pub inputs: Value,
    pub expected: Value,
    pub observed: Value,
    pub abs_err: Option<f64>,
    pub pass: bool,
}

impl ReportRow {
    /// Numeric row: passes iff `|observed − expected| ≤ tol`.
    pub fn numeric(test_id: impl Into<String>, inputs: Value, expected: f64, observed: f64, tol: f64) -> Self {
        let abs_err = (observed - expected).abs();
        Self {
            test_id: test_id.into(),
            inputs,
            expected: expected.into(),
            observed: observed.into(),
            abs_err: Some(abs_err),
            pass: abs_err <= tol,
        }
    }

    /// Row comparing tags or verdicts.
    pub fn tag(test_id: impl Into<String>, inputs: Value, expected: Value, observed: Value) -> Self {
        let pass = expected == observed;
        Self { test_id: test_id.into(), inputs, expected, observed, abs_err: None, pass }
    }
}

#[derive(Debug, Serialize)]
pub struct Summary {
    pub command: String,
    pub tolerance: f64,
    pub seed: u64,
    pub pass: bool,
    pub rows: Vec<ReportRow>,
}

impl Summary {
    pub fn new(command: &str, tolerance: f64, seed: u64, rows: Vec<ReportRow>) -> Self {
        let pass = rows.iter().all(|r| r.pass);
        Self { command: command.into(), tolerance, seed, pass, rows }
    }

    pub fn print(&self) {
        println!("{}", serde_json::to_string_pretty(self).expect("summary serializes"));
    }
}

/// A CSV table preceded by `# key = value` lines.
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    pub fn write(&self, path: &Path, meta: &[(&str, String)]) -> std::io::Result<()> {
        let mut out = BufWriter::new(File::create(path)?);
        for (k, v) in meta {
            writeln!(out, "# {k} = {v}")?;
        }
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.header)?;
        for r in &self.rows {
            w.write_record(r)?;
        }
        w.flush()?;
        Ok(())
    }
}

pub fn num(x: f64) -> String {
    x.to_string()
}
