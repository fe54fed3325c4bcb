//! JSON and plain-table rendering of command reports.

use serde_json::Value;

use crate::Format;

pub fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(v).expect("serializable"),
        Format::Table => table(v),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Array(xs) => {
            let parts: Vec<String> = xs.iter().map(scalar).collect();
            format!("({})", parts.join(","))
        }
        other => other.to_string(),
    }
}

fn rows_table(rows: &[Value]) -> String {
    let Some(Value::Object(first)) = rows.first() else {
        return String::new();
    };
    let cols: Vec<&String> = first.keys().collect();
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| cols.iter().map(|c| scalar(&r[c.as_str()])).collect())
        .collect();
    let widths: Vec<usize> = cols
        .iter()
        .enumerate()
        .map(|(i, c)| {
            cells
                .iter()
                .map(|row| row[i].chars().count())
                .chain([c.chars().count()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let line = |items: Vec<String>| {
        items
            .iter()
            .zip(&widths)
            .map(|(s, w)| format!("{s:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    let mut out = vec![line(cols.iter().map(|c| c.to_string()).collect())];
    out.push(line(widths.iter().map(|w| "-".repeat(*w)).collect()));
    out.extend(cells.into_iter().map(line));
    out.join("\n")
}

fn table(v: &Value) -> String {
    let Value::Object(map) = v else {
        return scalar(v);
    };
    let mut blocks = Vec::new();
    let mut plain = Vec::new();
    for (k, val) in map {
        match val {
            Value::Array(rows) if rows.first().is_some_and(Value::is_object) => {
                blocks.push(format!("{k}\n{}", rows_table(rows)));
            }
            Value::Object(_) => blocks.push(format!("{k}\n{}", table(val))),
            _ => plain.push(format!("{k}: {}", scalar(val))),
        }
    }
    let mut out = Vec::new();
    if !plain.is_empty() {
        out.push(plain.join("\n"));
    }
    out.extend(blocks);
    out.join("\n\n")
}
