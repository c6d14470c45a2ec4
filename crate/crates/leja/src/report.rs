//! Deterministic CSV and JSON serialization of result tables.

use std::io::Write;

use anyhow::Result;
use serde_json::{json, Map, Value};

/// One table cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
    Bool(bool),
    Ints(Vec<i64>),
    Floats(Vec<f64>),
    Missing,
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

/// 17 significant digits, enough to round-trip any `f64`.
pub fn format_float(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v.is_infinite() {
        if v > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        }
    } else {
        format!("{v:.16e}")
    }
}

impl Cell {
    fn csv_field(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format_float(*v),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Ints(v) => v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(";"),
            Cell::Floats(v) => v.iter().map(|x| format_float(*x)).collect::<Vec<_>>().join(";"),
            Cell::Missing => String::new(),
        }
    }

    fn json(&self) -> Value {
        let float = |v: f64| if v.is_finite() { json!(v) } else { json!(format_float(v)) };
        match self {
            Cell::Int(v) => json!(v),
            Cell::Float(v) => float(*v),
            Cell::Text(s) => json!(s),
            Cell::Bool(b) => json!(b),
            Cell::Ints(v) => json!(v),
            Cell::Floats(v) => Value::Array(v.iter().map(|x| float(*x)).collect()),
            Cell::Missing => Value::Null,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self { columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width");
        self.rows.push(row);
    }

    pub fn column_f64(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(
            self.rows
                .iter()
                .map(|r| match r[i] {
                    Cell::Float(v) => v,
                    Cell::Int(v) => v as f64,
                    _ => f64::NAN,
                })
                .collect(),
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    Svg,
}

pub fn write_csv<W: Write>(table: &Table, out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(&table.columns)?;
    for row in &table.rows {
        w.write_record(row.iter().map(Cell::csv_field))?;
    }
    w.flush()?;
    Ok(())
}

/// `{"meta": ..., "rows": [...]}` plus any `extra` top-level entries.
pub fn to_json(table: &Table, meta: &Value, extra: Option<(&str, Value)>) -> Value {
    let rows: Vec<Value> = table
        .rows
        .iter()
        .map(|r| {
            let obj: Map<String, Value> = table.columns.iter().cloned().zip(r.iter().map(Cell::json)).collect();
            Value::Object(obj)
        })
        .collect();
    let mut top = Map::new();
    top.insert("meta".into(), meta.clone());
    top.insert("rows".into(), Value::Array(rows));
    if let Some((k, v)) = extra {
        top.insert(k.into(), v);
    }
    Value::Object(top)
}

/// Serializes `table` in `format` (CSV or JSON).
pub fn emit_report<W: Write>(table: &Table, meta: &Value, format: Format, mut out: W) -> Result<()> {
    match format {
        Format::Csv => write_csv(table, out),
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, &to_json(table, meta, None))?;
            out.write_all(b"\n")?;
            Ok(())
        }
        Format::Svg => anyhow::bail!("tables cannot be written as SVG"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn emit(t: &Table, f: Format) -> String {
        let mut buf = Vec::new();
        emit_report(t, &json!({"seed": 1}), f, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn header_only_for_empty_rows() {
        let t = Table::new(&["k", "delta"]);
        assert_eq!(emit(&t, Format::Csv), "k,delta\n");
    }

    #[test]
    fn one_row_two_lines() {
        let mut t = Table::new(&["k", "delta"]);
        t.push(vec![Cell::Int(3), 1.25.into()]);
        assert_eq!(emit(&t, Format::Csv), "k,delta\n3,1.2500000000000000e0\n");
    }

    #[test]
    fn floats_round_trip() {
        for v in [0.1, 1.0 / 3.0, std::f64::consts::PI * 1e-300, f64::MAX, -2.5e-7] {
            assert_eq!(format_float(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn json_shape() {
        let mut t = Table::new(&["k", "x"]);
        t.push(vec![Cell::Int(1), Cell::Missing]);
        let v: Value = serde_json::from_str(&emit(&t, Format::Json)).unwrap();
        assert_eq!(v["meta"]["seed"], 1);
        assert_eq!(v["rows"][0]["k"], 1);
        assert!(v["rows"][0]["x"].is_null());
    }

    #[test]
    fn deterministic() {
        let mut t = Table::new(&["a", "b"]);
        t.push(vec![Cell::Floats(vec![0.5, -1.0]), "z".into()]);
        assert_eq!(emit(&t, Format::Json), emit(&t, Format::Json));
        assert_eq!(emit(&t, Format::Csv), "a,b\n5.0000000000000000e-1;-1.0000000000000000e0,z\n");
    }
}
