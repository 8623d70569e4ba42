//! Plain-text rendering of report values for `--pretty`.

use std::collections::BTreeSet;
use std::fmt::Write;

use serde_json::Value;

pub fn render(v: &Value) -> String {
    let mut out = String::new();
    block(&mut out, v, 0);
    if !out.ends_with('\n') {
        out.push('\n');
    }
    out
}

fn is_table(items: &[Value]) -> bool {
    !items.is_empty() && items.iter().all(Value::is_object)
}

fn block(out: &mut String, v: &Value, indent: usize) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(map) => {
            let width = map.keys().map(String::len).max().unwrap_or(0);
            for (k, x) in map {
                match x {
                    Value::Object(inner) if !inner.is_empty() => {
                        let _ = writeln!(out, "{pad}{k}:");
                        block(out, x, indent + 2);
                    }
                    Value::Array(items) if is_table(items) => {
                        let _ = writeln!(out, "{pad}{k}:");
                        table(out, items, indent + 2);
                    }
                    _ => {
                        let _ = writeln!(out, "{pad}{k:<width$}  {}", cell(x));
                    }
                }
            }
        }
        Value::Array(items) if is_table(items) => table(out, items, indent),
        _ => {
            let _ = writeln!(out, "{pad}{}", cell(v));
        }
    }
}

fn table(out: &mut String, rows: &[Value], indent: usize) {
    let pad = " ".repeat(indent);
    let columns: Vec<&String> = rows
        .iter()
        .filter_map(Value::as_object)
        .flat_map(|m| m.keys())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| columns.iter().map(|c| r.get(c.as_str()).map(cell).unwrap_or_default()).collect())
        .collect();
    let widths: Vec<usize> = columns
        .iter()
        .enumerate()
        .map(|(i, c)| cells.iter().map(|r| r[i].chars().count()).fold(c.len(), usize::max))
        .collect();
    let line = |fields: Vec<&str>| {
        let joined: Vec<String> = fields
            .iter()
            .zip(&widths)
            .map(|(f, w)| format!("{f:<w$}"))
            .collect();
        format!("{pad}{}", joined.join("  ").trim_end())
    };
    let _ = writeln!(out, "{}", line(columns.iter().map(|c| c.as_str()).collect()));
    for r in &cells {
        let _ = writeln!(out, "{}", line(r.iter().map(String::as_str).collect()));
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        Value::Array(items) => {
            let inner: Vec<String> = items.iter().map(cell).collect();
            format!("[{}]", inner.join(" "))
        }
        Value::Object(_) => v.to_string(),
        _ => v.to_string(),
    }
}
