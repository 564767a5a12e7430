//! Rendering of payloads and errors.

use serde_json::Value;

use crate::config::Format;

/// `serde_json` maps are ordered by key, so the JSON rendering is
/// byte-identical across runs.
pub fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(v).expect("values serialize"),
        Format::Text => {
            let mut out = String::new();
            text(v, 0, &mut out);
            out.trim_end().to_string()
        }
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| scalar(x).is_some() && !x.is_array()) => Some(
            a.iter()
                .map(|x| scalar(x).unwrap())
                .collect::<Vec<_>>()
                .join(", "),
        ),
        _ => None,
    }
}

fn text(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        text(x, depth + 1, out);
                    }
                }
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}[{i}] {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}[{i}]\n"));
                        text(x, depth + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}

/// Coarse error class for the machine-readable error payload.
pub fn error_kind(e: &anyhow::Error) -> &'static str {
    use syncgame::Error as E;
    for cause in e.chain() {
        if let Some(err) = cause.downcast_ref::<E>() {
            return match err {
                E::Graph(_) => "graph",
                E::Algebra(_) => "algebra",
                E::Game(_) => "game",
                E::Bcs(_) => "bcs",
                E::GameAlgebra(_) => "game_algebra",
                E::QuantumGraph(_) => "quantum_graph",
                E::Certificate(_) => "certificate",
            };
        }
        if cause.is::<std::io::Error>() {
            return "io";
        }
        if cause.is::<serde_json::Error>() {
            return "json";
        }
    }
    "input"
}
