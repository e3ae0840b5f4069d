//! Output records and their text / JSON renderings.

use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    PropertyFailed,
    UsageError,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::PropertyFailed => 1,
            Status::UsageError => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutputRecord {
    pub command: String,
    pub input: Value,
    pub result: Value,
    pub status: Status,
}

impl OutputRecord {
    pub fn ok(command: &str, input: Value, result: Value) -> Self {
        OutputRecord { command: command.to_string(), input, result, status: Status::Ok }
    }

    pub fn usage_error(command: &str, message: impl Into<String>) -> Self {
        OutputRecord {
            command: command.to_string(),
            input: Value::Null,
            result: serde_json::json!({ "error": message.into() }),
            status: Status::UsageError,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

/// Flattens a JSON value into `key=value` pairs: object keys are joined
/// with dots, arrays of scalars become space-separated lists and other
/// arrays are indexed.
pub fn flatten(prefix: &str, value: &Value, out: &mut Vec<(String, String)>) {
    let join = |key: &str| if prefix.is_empty() { key.to_string() } else { format!("{prefix}.{key}") };
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                flatten(&join(k), v, out);
            }
        }
        Value::Array(items) if items.iter().all(is_scalar) => {
            let text: Vec<String> = items.iter().map(scalar_text).collect();
            out.push((prefix.to_string(), text.join(" ")));
        }
        Value::Array(items) => {
            for (k, v) in items.iter().enumerate() {
                flatten(&join(&k.to_string()), v, out);
            }
        }
        other => out.push((prefix.to_string(), scalar_text(other))),
    }
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "none".to_string(),
        other => other.to_string(),
    }
}

pub fn render_text(record: &OutputRecord) -> String {
    let mut pairs = vec![("command".to_string(), record.command.clone())];
    let mut body = Vec::new();
    if !record.input.is_null() {
        flatten("input", &record.input, &mut body);
    }
    flatten("", &record.result, &mut body);
    pairs.extend(body);
    pairs.push(("status".to_string(), scalar_text(&serde_json::to_value(record.status).unwrap())));
    let mut text = String::new();
    for (k, v) in pairs {
        text.push_str(&k);
        text.push('=');
        text.push_str(&v);
        text.push('\n');
    }
    text
}

pub fn render(records: &[OutputRecord], format: Format) -> String {
    match format {
        Format::Text => records.iter().map(render_text).collect::<Vec<_>>().join("\n"),
        Format::Json => {
            let mut text = String::new();
            for r in records {
                text.push_str(&serde_json::to_string(r).expect("records serialize"));
                text.push('\n');
            }
            text
        }
    }
}

/// Parses text output back into `key -> value` pairs per record.
pub fn parse_text(text: &str) -> Vec<Map<String, Value>> {
    text.split("\n\n")
        .filter(|block| !block.trim().is_empty())
        .map(|block| {
            block
                .lines()
                .filter_map(|line| line.split_once('='))
                .map(|(k, v)| (k.to_string(), Value::String(v.to_string())))
                .collect()
        })
        .collect()
}
