//! Report assembly: every command produces a JSON value plus a plain-text
//! rendering; `--format` picks which one is printed. The seed is echoed in
//! both so reruns are reproducible byte for byte.

use std::io::Write;

use serde_json::{json, Value};

pub struct Report {
    pub json: Value,
    pub text: String,
}

impl Report {
    pub fn new(mut json: Value, text: String, seed: u64) -> Report {
        if let Value::Object(map) = &mut json {
            map.insert("seed".into(), json!(seed));
        }
        Report {
            json,
            text: format!("{text}\nseed = {seed}"),
        }
    }

    pub fn print(&self, format: &str) {
        let body = if format == "json" {
            self.json.to_string()
        } else {
            self.text.clone()
        };
        // A closed pipe (e.g. downstream `head`) is a normal way for the
        // reader to stop; exit quietly instead of panicking.
        let mut out = std::io::stdout().lock();
        if writeln!(out, "{body}").is_err() {
            std::process::exit(0);
        }
    }
}

/// Left-pad plain columns into an aligned table.
pub fn render_table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            if i < widths.len() {
                widths[i] = widths[i].max(cell.len());
            }
        }
    }
    let mut out = String::new();
    let fmt_row = |cells: &[String], widths: &[usize]| -> String {
        cells
            .iter()
            .enumerate()
            .map(|(i, c)| format!("{:<w$}", c, w = widths.get(i).copied().unwrap_or(0)))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    let head: Vec<String> = headers.iter().map(|h| h.to_string()).collect();
    out.push_str(&fmt_row(&head, &widths));
    out.push('\n');
    out.push_str(&"-".repeat(widths.iter().sum::<usize>() + 2 * (widths.len() - 1)));
    for row in rows {
        out.push('\n');
        out.push_str(&fmt_row(row, &widths));
    }
    out
}
