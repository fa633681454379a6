//! Experiment reports: a JSON envelope around a subcommand's payload.

use std::collections::BTreeMap;

use edcs_core::ratio::Ratio;
use edcs_core::Edge;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub subcommand: String,
    pub version: String,
    /// Input name to `sha256:<hex>` of the file contents.
    pub inputs: BTreeMap<String, String>,
    pub params: Value,
    pub result: Value,
    pub duration_ms: u64,
}

impl Report {
    pub fn new(subcommand: &str) -> Self {
        Report {
            subcommand: subcommand.to_string(),
            version: VERSION.to_string(),
            inputs: BTreeMap::new(),
            params: Value::Null,
            result: Value::Null,
            duration_ms: 0,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// CSV rendering of the payload: one row, or one row per sweep point.
    pub fn to_csv(&self) -> String {
        match self.result.get("points").and_then(Value::as_array) {
            Some(points) => {
                let name = self.result["parameter"].as_str().unwrap_or("value").replace('-', "_");
                let rows: Vec<(String, &Value)> = points
                    .iter()
                    .map(|p| (scalar(&p["value"]), &p["result"]))
                    .collect();
                csv_table(Some(&name), &rows)
            }
            None => csv_table(None, &[(String::new(), &self.result)]),
        }
    }
}

pub fn digest(bytes: &[u8]) -> String {
    let hash = Sha256::digest(bytes);
    let hex: String = hash.iter().map(|b| format!("{b:02x}")).collect();
    format!("sha256:{hex}")
}

/// The report with wall-clock fields removed, as compared across runs.
pub fn canonical(report_json: &str) -> serde_json::Result<String> {
    let mut v: Value = serde_json::from_str(report_json)?;
    if let Some(obj) = v.as_object_mut() {
        obj.remove("duration_ms");
    }
    serde_json::to_string(&v)
}

/// Ratios are plain numbers, infinite ones the string `"inf"`.
pub fn ratio_value(r: Ratio) -> Value {
    if r.is_infinite() {
        json!("inf")
    } else {
        json!(r.value())
    }
}

pub fn edges_value(edges: &[Edge]) -> Value {
    Value::Array(edges.iter().map(|e| json!([e.0, e.1])).collect())
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(scalar).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}

fn quote(field: &str) -> String {
    if field.contains([',', '"', '\n']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

fn csv_table(lead: Option<&str>, rows: &[(String, &Value)]) -> String {
    let mut columns: Vec<String> = Vec::new();
    for (_, r) in rows {
        if let Some(obj) = r.as_object() {
            for k in obj.keys() {
                if !columns.contains(k) {
                    columns.push(k.clone());
                }
            }
        }
    }
    // A swept field that the payload already echoes needs no extra column.
    let lead = lead.filter(|l| !columns.iter().any(|c| c == l));
    let mut out = String::new();
    let mut header: Vec<String> = lead.map(|l| vec![l.to_string()]).unwrap_or_default();
    header.extend(columns.iter().cloned());
    out.push_str(&header.iter().map(|h| quote(h)).collect::<Vec<_>>().join(","));
    out.push('\n');
    for (value, r) in rows {
        let mut fields: Vec<String> = lead.map(|_| vec![value.clone()]).unwrap_or_default();
        fields.extend(columns.iter().map(|c| scalar(r.get(c).unwrap_or(&Value::Null))));
        out.push_str(&fields.iter().map(|f| quote(f)).collect::<Vec<_>>().join(","));
        out.push('\n');
    }
    out
}
