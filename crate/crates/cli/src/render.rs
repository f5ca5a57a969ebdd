//! Plain-text rendering of JSON results.

use serde_json::{Map, Value};

/// Formats a float with 10 significant digits.
pub fn sig10(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let e = v.abs().log10().floor() as i32;
    if (-4..10).contains(&e) {
        format!("{:.*}", (9 - e) as usize, v)
    } else {
        format!("{v:.9e}")
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::Number(n) if n.is_f64() => sig10(n.as_f64().unwrap()),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

/// Renders nested objects as indented `key  value` lines and arrays of
/// flat objects as fixed-width tables.
pub fn to_text(v: &Value) -> String {
    let mut out = String::new();
    render(v, 0, &mut out);
    out
}

fn render(v: &Value, indent: usize, out: &mut String) {
    match v {
        Value::Object(map) => render_object(map, indent, out),
        Value::Array(items) => render_array(items, indent, out),
        other => {
            out.push_str(&" ".repeat(indent));
            out.push_str(&scalar(other));
            out.push('\n');
        }
    }
}

fn render_object(map: &Map<String, Value>, indent: usize, out: &mut String) {
    let width = map.keys().map(|k| k.len()).max().unwrap_or(0);
    for (k, v) in map {
        let pad = " ".repeat(indent);
        if is_scalar(v) {
            out.push_str(&format!("{pad}{k:<width$}  {}\n", scalar(v)));
        } else if let Value::Array(a) = v {
            if a.iter().all(is_scalar) {
                let cells: Vec<String> = a.iter().map(scalar).collect();
                out.push_str(&format!("{pad}{k:<width$}  [{}]\n", cells.join(", ")));
            } else {
                out.push_str(&format!("{pad}{k}\n"));
                render_array(a, indent + 2, out);
            }
        } else {
            out.push_str(&format!("{pad}{k}\n"));
            render(v, indent + 2, out);
        }
    }
}

fn render_array(items: &[Value], indent: usize, out: &mut String) {
    let flat_rows = items
        .iter()
        .all(|r| matches!(r, Value::Object(m) if m.values().all(is_scalar)));
    if !flat_rows || items.is_empty() {
        for it in items {
            render(it, indent, out);
        }
        return;
    }
    let Value::Object(first) = &items[0] else { unreachable!() };
    let cols: Vec<&String> = first.keys().collect();
    let cells: Vec<Vec<String>> = items
        .iter()
        .map(|r| cols.iter().map(|c| r.get(c.as_str()).map_or("-".into(), scalar)).collect())
        .collect();
    let widths: Vec<usize> = cols
        .iter()
        .enumerate()
        .map(|(i, c)| cells.iter().map(|r| r[i].len()).max().unwrap_or(0).max(c.len()))
        .collect();
    let pad = " ".repeat(indent);
    let line = |row: Vec<&str>| {
        let parts: Vec<String> = row.iter().zip(&widths).map(|(s, w)| format!("{s:>w$}")).collect();
        format!("{pad}{}\n", parts.join("  "))
    };
    out.push_str(&line(cols.iter().map(|c| c.as_str()).collect()));
    for r in &cells {
        out.push_str(&line(r.iter().map(|s| s.as_str()).collect()));
    }
}
