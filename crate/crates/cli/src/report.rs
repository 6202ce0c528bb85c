//! Deterministic reports: `key: value` text or a JSON object with sorted keys.

use freyd_core::linalg::{ConcreteMatrix, QuotientInvariants, ScalarRing};
use serde_json::{json, Map, Value};

#[derive(Default)]
pub struct Report {
    lines: Vec<String>,
    json: Map<String, Value>,
    show_matrices: bool,
}

/// `Q^2 + Z/4` style rendering with the ring's own letter for the free part.
pub fn invariants_text(v: &QuotientInvariants, ring: ScalarRing) -> String {
    if v.is_trivial() {
        return "0".into();
    }
    let letter = match ring {
        ScalarRing::Rationals => "Q".to_string(),
        ScalarRing::Integers => "Z".to_string(),
        ScalarRing::PrimeField(p) => format!("F{p}"),
    };
    let mut parts = Vec::new();
    if v.free_rank > 0 {
        parts.push(format!("{letter}^{}", v.free_rank));
    }
    parts.extend(v.torsion.iter().map(|t| format!("Z/{t}")));
    parts.join(" + ")
}

pub fn invariants_json(v: &QuotientInvariants) -> Value {
    json!({
        "free_rank": v.free_rank,
        "torsion": v.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
    })
}

fn matrix_json(m: &ConcreteMatrix) -> Value {
    Value::Array(
        m.to_string_rows()
            .into_iter()
            .map(|r| Value::Array(r.into_iter().map(Value::String).collect()))
            .collect(),
    )
}

impl Report {
    pub fn new(command: &str, show_matrices: bool) -> Self {
        let mut r = Self {
            show_matrices,
            ..Self::default()
        };
        r.field("command", command, json!(command));
        r
    }

    /// A field shown as `text` and stored under `key` in JSON.
    pub fn field(&mut self, key: &str, text: impl std::fmt::Display, value: Value) {
        self.lines.push(format!("{key}: {text}"));
        self.json.insert(key.to_string(), value);
    }

    pub fn text(&mut self, key: &str, text: impl std::fmt::Display) {
        let s = text.to_string();
        self.field(key, &s, Value::String(s.clone()));
    }

    pub fn verdict(&mut self, text_key: &str, v: bool) {
        self.lines.push(format!("{text_key}: {v}"));
        self.json.insert("verdict".into(), Value::Bool(v));
    }

    pub fn verdict_word(&mut self, text_key: &str, v: &str) {
        self.lines.push(format!("{text_key}: {v}"));
        self.json.insert("verdict".into(), Value::String(v.into()));
    }

    pub fn invariants(&mut self, v: &QuotientInvariants, ring: ScalarRing) {
        self.lines.push(format!("invariants: {}", invariants_text(v, ring)));
        self.json.insert("invariants".into(), invariants_json(v));
    }

    pub fn matrix(&mut self, key: &str, m: &ConcreteMatrix) {
        if !self.show_matrices {
            return;
        }
        self.lines.push(format!("{key}: {}x{}", m.rows(), m.cols()));
        for r in m.to_string_rows() {
            self.lines.push(format!("  [{}]", r.join(", ")));
        }
        let mats = self
            .json
            .entry("matrices")
            .or_insert_with(|| Value::Object(Map::new()));
        if let Value::Object(o) = mats {
            o.insert(key.to_string(), matrix_json(m));
        }
    }

    /// A table: header plus rows, rendered with aligned columns.
    pub fn table(&mut self, key: &str, header: &[&str], rows: Vec<Vec<String>>) {
        let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
        for r in &rows {
            for (w, c) in widths.iter_mut().zip(r) {
                *w = (*w).max(c.len());
            }
        }
        let fmt_row = |cells: Vec<&str>| {
            cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:<w$}"))
                .collect::<Vec<_>>()
                .join("  ")
                .trim_end()
                .to_string()
        };
        self.lines.push(format!("{key}:"));
        self.lines.push(format!("  {}", fmt_row(header.to_vec())));
        for r in &rows {
            self.lines.push(format!("  {}", fmt_row(r.iter().map(String::as_str).collect())));
        }
        let arr = rows
            .into_iter()
            .map(|r| {
                let mut o = Map::new();
                for (h, c) in header.iter().zip(r) {
                    o.insert(h.to_string(), Value::String(c));
                }
                Value::Object(o)
            })
            .collect();
        self.json.insert(key.to_string(), Value::Array(arr));
    }

    pub fn json_only(&mut self, key: &str, value: Value) {
        self.json.insert(key.to_string(), value);
    }

    pub fn render(&self, as_json: bool) -> String {
        if as_json {
            let mut s = serde_json::to_string_pretty(&Value::Object(self.json.clone())).expect("serializable");
            s.push('\n');
            s
        } else {
            let mut s = self.lines.join("\n");
            s.push('\n');
            s
        }
    }
}
