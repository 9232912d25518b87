use std::fmt::Write as _;

use serde_json::{json, Map, Value};

use crate::Format;

/// One named pass/fail outcome.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool) -> Self {
        Check { name: name.into(), passed }
    }
}

/// Result of one command run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub command: String,
    pub config: Value,
    pub checks: Vec<Check>,
    pub payload: Value,
    /// Set only when timing is requested, so default output stays reproducible.
    pub wall_clock_ms: Option<u128>,
    /// Raw CSV body for commands whose natural output is a table of numbers.
    pub csv: Option<String>,
}

impl RunReport {
    pub fn new(command: &str, config: Value) -> Self {
        RunReport {
            command: command.into(),
            config,
            checks: Vec::new(),
            payload: Value::Object(Map::new()),
            wall_clock_ms: None,
            csv: None,
        }
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool) {
        self.checks.push(Check::new(name, passed));
    }

    pub fn set(&mut self, key: &str, value: Value) {
        if let Value::Object(m) = &mut self.payload {
            m.insert(key.into(), value);
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "command": self.command,
            "version": env!("CARGO_PKG_VERSION"),
            "config": self.config,
            "checks": self.checks.iter().map(|c| json!({ "name": c.name, "passed": c.passed })).collect::<Vec<_>>(),
            "passed": self.passed(),
            "payload": self.payload,
        });
        if let Some(ms) = self.wall_clock_ms {
            v["wall_clock_ms"] = json!(ms);
        }
        v
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json()).expect("reports serialize");
                s.push('\n');
                s
            }
            Format::Csv => match &self.csv {
                Some(body) => body.clone(),
                None => {
                    let mut s = String::from("check,passed\n");
                    for c in &self.checks {
                        let _ = writeln!(s, "{},{}", csv_field(&c.name), c.passed);
                    }
                    s
                }
            },
            Format::Table => self.render_table(),
        }
    }

    fn render_table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "vermacas {} {}", env!("CARGO_PKG_VERSION"), self.command);
        let width = self.checks.iter().map(|c| c.name.chars().count()).max().unwrap_or(0);
        for c in &self.checks {
            let pad = width - c.name.chars().count();
            let _ = writeln!(s, "  {}{}  {}", c.name, " ".repeat(pad), if c.passed { "PASS" } else { "FAIL" });
        }
        if let Value::Object(m) = &self.payload {
            for (k, v) in m {
                match v {
                    Value::String(x) => {
                        let _ = writeln!(s, "  {k}: {x}");
                    }
                    Value::Number(_) | Value::Bool(_) => {
                        let _ = writeln!(s, "  {k}: {v}");
                    }
                    _ => {}
                }
            }
        }
        if let Some(body) = &self.csv {
            s.push_str(body);
        }
        let _ = writeln!(s, "{}", if self.passed() { "all checks passed" } else { "some checks failed" });
        if let Some(ms) = self.wall_clock_ms {
            let _ = writeln!(s, "wall clock: {ms} ms");
        }
        s
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// A structured failure, emitted in place of a report.
pub fn error_report(command: &str, config: &Value, kind: &str, message: &str, extra: Value) -> Value {
    json!({
        "command": command,
        "version": env!("CARGO_PKG_VERSION"),
        "config": config,
        "passed": false,
        "error": { "kind": kind, "message": message, "detail": extra },
    })
}
