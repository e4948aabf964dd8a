//! Structured results shared by every command, printable as text or JSON.

use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub summary: String,
    pub details: Value,
    /// Wall-clock milliseconds; only present when timings were requested,
    /// since they break byte-for-byte reproducibility.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl CheckResult {
    pub fn new(name: &str, passed: bool, summary: impl Into<String>, details: Value) -> Self {
        CheckResult {
            name: name.to_string(),
            passed,
            summary: summary.into(),
            details,
            elapsed_ms: None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
    #[serde(skip)]
    timings: bool,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            passed: true,
            checks: Vec::new(),
            timings: false,
        }
    }

    pub fn with_timings(mut self, on: bool) -> Self {
        self.timings = on;
        self
    }

    pub fn push(&mut self, check: CheckResult) {
        self.passed &= check.passed;
        self.checks.push(check);
    }

    /// Runs `f`, recording its wall time when timings are on. An error
    /// becomes a failed check carrying the message.
    pub fn run(&mut self, name: &str, f: impl FnOnce() -> crate::Result<CheckResult>) {
        let start = Instant::now();
        let mut check = f().unwrap_or_else(|e| {
            CheckResult::new(name, false, format!("error: {e}"), Value::Null)
        });
        check.name = name.to_string();
        if self.timings {
            check.elapsed_ms = Some(start.elapsed().as_millis() as u64);
        }
        self.push(check);
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let _ = write!(out, "[{}] {}: {}", verdict(c.passed), c.name, c.summary);
            if let Some(ms) = c.elapsed_ms {
                let _ = write!(out, " ({ms} ms)");
            }
            out.push('\n');
            render_details(&mut out, &c.details, 1);
        }
        let _ = writeln!(out, "{}: {}", self.command, verdict(self.passed));
        out
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => Some(format!(
            "[{}]",
            a.iter().map(|x| scalar(x).unwrap_or_default()).collect::<Vec<_>>().join(", ")
        )),
        _ => None,
    }
}

fn render_details(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match scalar(x) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}{k}: {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}{k}:");
                        render_details(out, x, depth + 1);
                    }
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                match scalar(x) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}- {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}-");
                        render_details(out, x, depth + 1);
                    }
                }
            }
        }
        Value::Null => {}
        other => {
            let _ = writeln!(out, "{pad}{}", scalar(other).unwrap_or_default());
        }
    }
}
