//! CSV tables and JSON summaries.
//!
//! A CSV file starts with `#` lines echoing the configuration, then one
//! header row. The thread count is left out of the echo so that the CSV
//! bytes depend only on what determines the numbers.

use serde::Serialize;
use serde_json::{json, Map, Value};
use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub bound: f64,
    /// "pass", "fail" or "skip"
    pub status: &'static str,
}

impl Check {
    /// Passes when `value <= bound`.
    pub fn at_most(name: impl Into<String>, value: f64, bound: f64) -> Self {
        let status = if value <= bound { "pass" } else { "fail" };
        Check {
            name: name.into(),
            value,
            bound,
            status,
        }
    }

    /// Boolean check; value is 1 for true.
    pub fn holds(name: impl Into<String>, ok: bool) -> Self {
        Check {
            name: name.into(),
            value: if ok { 1.0 } else { 0.0 },
            bound: 1.0,
            status: if ok { "pass" } else { "fail" },
        }
    }

    pub fn skipped(name: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            value: f64::NAN,
            bound: f64::NAN,
            status: "skip",
        }
    }

    pub fn failed(&self) -> bool {
        self.status == "fail"
    }
}

pub struct Report {
    pub command: &'static str,
    /// Everything that determines the output; echoed in CSV and JSON.
    pub config: Map<String, Value>,
    pub threads: Option<usize>,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub results: Map<String, Value>,
    pub checks: Vec<Check>,
    pub deviations: Vec<&'static str>,
}

impl Report {
    /// The configuration is filled in by the caller.
    pub fn new(command: &'static str) -> Self {
        Report {
            command,
            config: Map::new(),
            threads: None,
            header: Vec::new(),
            rows: Vec::new(),
            results: Map::new(),
            checks: Vec::new(),
            deviations: Vec::new(),
        }
    }

    pub fn columns(&mut self, names: &[&str]) {
        self.header = names.iter().map(|s| s.to_string()).collect();
    }

    pub fn row(&mut self, values: &[f64]) {
        self.rows.push(values.iter().map(|v| fmt_num(*v)).collect());
    }

    pub fn text_row(&mut self, values: Vec<String>) {
        self.rows.push(values);
    }

    pub fn result(&mut self, key: &str, v: impl Serialize) {
        self.results.insert(
            key.to_string(),
            serde_json::to_value(v).unwrap_or(Value::Null),
        );
    }

    pub fn check(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn any_failed(&self) -> bool {
        self.checks.iter().any(Check::failed)
    }

    pub fn csv(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# curvelab {}", self.command);
        let _ = writeln!(s, "# schema = {SCHEMA}");
        for (k, v) in &self.config {
            let _ = writeln!(s, "# {k} = {v}");
        }
        let _ = writeln!(s, "{}", self.header.join(","));
        for r in &self.rows {
            let _ = writeln!(s, "{}", r.join(","));
        }
        s
    }

    pub fn summary(&self, elapsed_seconds: f64) -> Value {
        let mut config = self.config.clone();
        config.insert("threads".into(), json!(self.threads));
        json!({
            "schema": SCHEMA,
            "command": self.command,
            "config": config,
            "results": self.results,
            "checks": self.checks,
            "deviations": self.deviations,
            "elapsed_seconds": elapsed_seconds,
        })
    }
}

/// Shortest round-trip form; non-finite values as `nan`, `inf`, `-inf`.
pub fn fmt_num(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v.is_infinite() {
        if v > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        }
    } else {
        format!("{v:e}")
    }
}

pub fn error_summary(command: &str, config: &Value, message: &str, exit_code: i32) -> Value {
    json!({
        "schema": SCHEMA,
        "command": command,
        "config": config,
        "results": Value::Null,
        "checks": [],
        "deviations": [],
        "error": { "message": message, "exit_code": exit_code },
    })
}

pub fn write_text(path: Option<&Path>, text: &str, fallback_stderr: bool) -> std::io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text),
        None if fallback_stderr => std::io::stderr().write_all(text.as_bytes()),
        None => std::io::stdout().write_all(text.as_bytes()),
    }
}
