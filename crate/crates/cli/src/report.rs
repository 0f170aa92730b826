use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA: &str = "knotsum-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
    PreconditionFailed,
}

/// One named cross-check. Failures make the process exit with code 2.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub id: &'static str,
    pub status: Status,
    pub detail: String,
}

impl Check {
    pub fn verdict(id: &'static str, ok: bool, detail: impl Into<String>) -> Self {
        let status = if ok { Status::Pass } else { Status::Fail };
        Check {
            id,
            status,
            detail: detail.into(),
        }
    }

    pub fn skipped(id: &'static str, reason: impl Into<String>) -> Self {
        Check {
            id,
            status: Status::Skipped,
            detail: reason.into(),
        }
    }

    pub fn precondition(id: &'static str, reason: impl Into<String>) -> Self {
        Check {
            id,
            status: Status::PreconditionFailed,
            detail: reason.into(),
        }
    }
}

#[derive(Serialize)]
pub struct Document<T: Serialize> {
    pub schema: &'static str,
    pub version: &'static str,
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub settings: Settings,
    pub result: T,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Settings {
    pub state_sum_cap: usize,
    pub tolerance: f64,
}

impl<T: Serialize> Document<T> {
    pub fn new(command: &str, seed: Option<u64>, settings: Settings, result: T) -> Self {
        Document {
            schema: SCHEMA,
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            seed,
            settings,
            result,
        }
    }
}

/// Whether any check anywhere in the document failed.
pub fn has_failure(v: &Value) -> bool {
    match v {
        Value::Object(m) => {
            let failed = m.get("id").is_some() && m.get("status").and_then(Value::as_str) == Some("fail");
            failed || m.values().any(has_failure)
        }
        Value::Array(a) => a.iter().any(has_failure),
        _ => false,
    }
}

/// Indented plain-text view of a JSON document.
pub fn render_text(v: &Value) -> String {
    let mut out = String::new();
    render(v, 0, &mut out);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => Some(format!(
            "[{}]",
            a.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")
        )),
        // short pairs such as polynomial terms or named inputs
        Value::Array(a)
            if a.iter().all(|x| {
                x.as_array()
                    .is_some_and(|p| p.len() <= 2 && p.iter().all(|y| !y.is_object() && !y.is_array()))
            }) =>
        {
            let parts: Vec<String> = a
                .iter()
                .map(|x| {
                    x.as_array()
                        .unwrap()
                        .iter()
                        .filter_map(scalar)
                        .collect::<Vec<_>>()
                        .join(" ")
                })
                .collect();
            Some(format!("[{}]", parts.join(", ")))
        }
        _ => None,
    }
}

fn render(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) => {
            // checks render on one line each
            if let (Some(id), Some(status)) = (
                m.get("id").and_then(Value::as_str),
                m.get("status").and_then(Value::as_str),
            ) {
                let detail = m.get("detail").and_then(Value::as_str).unwrap_or("");
                let _ = writeln!(out, "{pad}[{}] {id}: {detail}", status.to_uppercase());
                return;
            }
            for (k, x) in m {
                match scalar(x) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}{k}: {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}{k}:");
                        render(x, depth + 1, out);
                    }
                }
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                match scalar(x) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}- {s}");
                    }
                    None => {
                        if x.get("id").is_some() {
                            render(x, depth, out);
                        } else {
                            let _ = writeln!(out, "{pad}#{}", i + 1);
                            render(x, depth + 1, out);
                        }
                    }
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", scalar(other).unwrap_or_default());
        }
    }
}
