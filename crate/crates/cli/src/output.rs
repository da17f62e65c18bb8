//! Tabular results rendered as CSV or JSON.

use std::io::{self, Write};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// One table cell.
#[derive(Debug, Clone)]
pub enum Cell {
    Int(BigInt),
    Rational(BigRational),
    Float(f64),
    Text(String),
    Bool(bool),
    Empty,
}

impl From<u64> for Cell {
    fn from(x: u64) -> Self {
        Cell::Int(x.into())
    }
}

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::Int(x.into())
    }
}

impl From<u32> for Cell {
    fn from(x: u32) -> Self {
        Cell::Int(x.into())
    }
}

impl From<BigInt> for Cell {
    fn from(x: BigInt) -> Self {
        Cell::Int(x)
    }
}

impl From<BigRational> for Cell {
    fn from(x: BigRational) -> Self {
        if x.denom().is_one() {
            Cell::Int(x.numer().clone())
        } else {
            Cell::Rational(x)
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

impl From<bool> for Cell {
    fn from(x: bool) -> Self {
        Cell::Bool(x)
    }
}

impl From<&str> for Cell {
    fn from(x: &str) -> Self {
        Cell::Text(x.to_string())
    }
}

impl From<String> for Cell {
    fn from(x: String) -> Self {
        Cell::Text(x)
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(x: Option<T>) -> Self {
        x.map_or(Cell::Empty, Into::into)
    }
}

/// Floating rendering of an exact value, for the companion column.
pub fn float_of(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

fn csv_field(cell: &Cell) -> String {
    let raw = match cell {
        Cell::Int(x) => x.to_string(),
        Cell::Rational(q) => format!("{}/{}", q.numer(), q.denom()),
        Cell::Float(x) => x.to_string(),
        Cell::Text(s) => s.clone(),
        Cell::Bool(b) => b.to_string(),
        Cell::Empty => String::new(),
    };
    if raw.contains([',', '"', '\n']) {
        format!("\"{}\"", raw.replace('"', "\"\""))
    } else {
        raw
    }
}

fn json_value(cell: &Cell) -> Value {
    match cell {
        Cell::Int(x) => match x.to_i64() {
            Some(v) => json!(v),
            None => json!({ "numerator": x.to_string(), "denominator": "1" }),
        },
        Cell::Rational(q) => json!({ "numerator": q.numer().to_string(), "denominator": q.denom().to_string() }),
        Cell::Float(x) if x.is_finite() => json!(x),
        Cell::Float(x) => json!(x.to_string()),
        Cell::Text(s) => json!(s),
        Cell::Bool(b) => json!(b),
        Cell::Empty => Value::Null,
    }
}

/// A command's result: named parameters, metadata and a table of records.
#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    pub parameters: Vec<(String, Cell)>,
    pub metadata: Vec<(String, Cell)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Report {
    pub fn new(command: impl Into<String>, columns: &[&str]) -> Self {
        Report {
            command: command.into(),
            parameters: Vec::new(),
            metadata: vec![("version".into(), env!("CARGO_PKG_VERSION").into())],
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn param(mut self, name: &str, value: impl Into<Cell>) -> Self {
        self.parameters.push((name.into(), value.into()));
        self
    }

    pub fn meta(mut self, name: &str, value: impl Into<Cell>) -> Self {
        self.metadata.push((name.into(), value.into()));
        self
    }

    pub fn row(&mut self, cells: Vec<Cell>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> io::Result<()> {
        match format {
            Format::Csv => {
                writeln!(out, "{}", self.columns.join(","))?;
                for row in &self.rows {
                    let fields: Vec<String> = row.iter().map(csv_field).collect();
                    writeln!(out, "{}", fields.join(","))?;
                }
            }
            Format::Json => {
                let object = |pairs: &[(String, Cell)]| -> Value {
                    Value::Object(pairs.iter().map(|(k, v)| (k.clone(), json_value(v))).collect::<Map<_, _>>())
                };
                let records: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|row| {
                        Value::Object(self.columns.iter().zip(row).map(|(k, v)| (k.clone(), json_value(v))).collect())
                    })
                    .collect();
                let doc = json!({
                    "command": self.command,
                    "parameters": object(&self.parameters),
                    "metadata": object(&self.metadata),
                    "records": records,
                });
                serde_json::to_writer_pretty(&mut *out, &doc)?;
                writeln!(out)?;
            }
        }
        Ok(())
    }
}
