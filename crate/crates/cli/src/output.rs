use std::fmt::Write as _;
use std::io::Write as _;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::{json, Value};

use crate::registry::REGISTRY;

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Table,
    Json,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: &'static str,
    pub name: String,
    pub passed: bool,
    pub result: Value,
}

impl Report {
    pub fn new(command: &'static str, name: impl Into<String>, passed: bool, result: impl Serialize) -> Self {
        let result = serde_json::to_value(result).expect("reports serialize");
        Report { command, name: name.into(), passed, result }
    }
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

pub fn print(report: &Report, format: Format) {
    emit(&render(report, format));
}

pub fn render(report: &Report, format: Format) -> String {
    let mut out = String::new();
    match format {
        // serde_json keeps object keys sorted, so equal inputs print equal bytes
        Format::Json => {
            out = serde_json::to_string_pretty(report).expect("reports serialize");
            out.push('\n');
        }
        Format::Table => {
            let status = if report.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "{} {}: {status}", report.command, report.name);
            match &report.result {
                Value::Object(fields) => {
                    let width = fields.keys().map(String::len).max().unwrap_or(0);
                    for (k, v) in fields {
                        let _ = writeln!(out, "  {k:<width$}  {}", compact(v));
                    }
                }
                other => {
                    let _ = writeln!(out, "  {}", compact(other));
                }
            }
        }
    }
    out
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => {
            let s = other.to_string();
            if s.len() > 160 {
                format!("{}...", s.chars().take(157).collect::<String>())
            } else {
                s
            }
        }
    }
}

pub fn print_list(format: Format) {
    match format {
        Format::Json => {
            let entries: Vec<Value> = REGISTRY
                .iter()
                .map(|v| json!({"slug": v.slug, "aliases": v.aliases, "tag": v.tag, "summary": v.summary}))
                .collect();
            emit(&format!("{}\n", serde_json::to_string_pretty(&entries).expect("list serializes")));
        }
        Format::Table => {
            for v in REGISTRY {
                emit(&format!("{:<28} {:<34} {}\n", v.slug, format!("[{}]", v.tag), v.summary));
            }
        }
    }
}
