use serde_json::Value;

use crate::args::Format;
use crate::commands::Report;

pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report.json).expect("JSON value serializes");
            s.push('\n');
            s
        }
        Format::Csv => report.csv.clone().unwrap_or_else(|| {
            let mut out = String::from("key,value\n");
            for (k, v) in flatten(&report.json) {
                out.push_str(&format!("{},{}\n", csv_field(&k), csv_field(&v)));
            }
            out
        }),
        Format::Text => flatten(&report.json).into_iter().map(|(k, v)| format!("{k}: {v}\n")).collect(),
    }
}

/// Leaf values keyed by dotted paths (`q.0`, `nondegenerate.witness`).
fn flatten(v: &Value) -> Vec<(String, String)> {
    let mut out = Vec::new();
    walk(v, String::new(), &mut out);
    out
}

fn walk(v: &Value, path: String, out: &mut Vec<(String, String)>) {
    let join = |key: &str| if path.is_empty() { key.to_string() } else { format!("{path}.{key}") };
    match v {
        Value::Object(map) => {
            for (k, child) in map {
                walk(child, join(k), out);
            }
        }
        Value::Array(items) if !items.is_empty() => {
            for (i, child) in items.iter().enumerate() {
                walk(child, join(&i.to_string()), out);
            }
        }
        Value::Array(_) => out.push((path, "[]".into())),
        Value::String(s) => out.push((path, s.clone())),
        other => out.push((path, other.to_string())),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
