//! Tabular experiment output and its CSV / JSON renderings.

use std::fmt::Write;

use serde_json::{json, Map, Value};

use crate::params::Params;

pub const UNITS_NOTE: &str = "hbar = k_B = e = 1; thermoelectric rows also set h = 1";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(format!("unknown format '{s}' (csv or json)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
    /// Derived findings worth carrying with the data (crossings, regions).
    pub notes: Vec<String>,
}

impl Dataset {
    pub fn new(columns: Vec<&'static str>, rows: Vec<Vec<f64>>) -> Self {
        debug_assert!(rows.iter().all(|r| r.len() == columns.len()));
        Dataset { columns, rows, notes: Vec::new() }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let k = self.columns.iter().position(|c| *c == name)?;
        Some(self.rows.iter().map(|r| r[k]).collect())
    }
}

/// 17 significant digits, so values round-trip exactly. Negative zero is
/// written as zero.
pub fn number(x: f64) -> String {
    if x == 0.0 {
        "0.0000000000000000e0".into()
    } else if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{x:.16e}")
    }
}

pub fn render(id: &str, params: &Params, data: &Dataset, format: Format) -> String {
    match format {
        Format::Csv => render_csv(id, params, data),
        Format::Json => render_json(id, params, data),
    }
}

fn render_csv(id: &str, params: &Params, data: &Dataset) -> String {
    let mut out = String::new();
    writeln!(out, "# qheat {}", env!("CARGO_PKG_VERSION")).unwrap();
    writeln!(out, "# experiment: {id}").unwrap();
    for (k, v) in params.iter() {
        writeln!(out, "# param {k} = {}", number(v)).unwrap();
    }
    writeln!(out, "# units: {UNITS_NOTE}").unwrap();
    for n in &data.notes {
        writeln!(out, "# note: {n}").unwrap();
    }
    writeln!(out, "{}", data.columns.join(",")).unwrap();
    for row in &data.rows {
        let cells: Vec<String> = row.iter().map(|&x| number(x)).collect();
        writeln!(out, "{}", cells.join(",")).unwrap();
    }
    out
}

fn json_number(x: f64) -> Value {
    serde_json::Number::from_f64(x + 0.0).map(Value::Number).unwrap_or(Value::Null)
}

fn render_json(id: &str, params: &Params, data: &Dataset) -> String {
    let mut p = Map::new();
    for (k, v) in params.iter() {
        p.insert(k.to_string(), json_number(v));
    }
    let rows: Vec<Value> = data.rows.iter().map(|r| Value::Array(r.iter().map(|&x| json_number(x)).collect())).collect();
    let doc = json!({
        "tool": "qheat",
        "version": env!("CARGO_PKG_VERSION"),
        "experiment": id,
        "params": Value::Object(p),
        "units": UNITS_NOTE,
        "notes": data.notes,
        "columns": data.columns,
        "rows": rows,
    });
    let mut s = serde_json::to_string_pretty(&doc).expect("dataset serializes");
    s.push('\n');
    s
}
