//! Output envelope, fixed float formatting and JSON/CSV writers.

use std::io::{self, Write};

use serde::Serialize;
use serde_json::ser::Formatter;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// 17 significant digits in scientific notation.
pub fn fmt_float(x: f64) -> String {
    if x.is_nan() {
        "NaN".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{x:.16e}")
    }
}

/// Compact JSON with every float written by [`fmt_float`]; non-finite values become `null`.
struct FixedFloats;

impl Formatter for FixedFloats {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        if value.is_finite() {
            writer.write_all(fmt_float(value).as_bytes())
        } else {
            writer.write_all(b"null")
        }
    }

    fn write_f32<W: ?Sized + Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, value as f64)
    }
}

pub fn to_json_string<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, FixedFloats);
    value.serialize(&mut ser).map_err(|e| Error::Consistency(format!("serialization failed: {e}")))?;
    Ok(String::from_utf8(buf).expect("serde_json writes UTF-8"))
}

/// A header row and rows of scalar cells.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Table { columns: columns.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

/// What a command produced: the JSON payload and the table used for CSV.
#[derive(Clone, Debug)]
pub struct Output {
    pub command: String,
    pub parameters: Map<String, Value>,
    pub data: Value,
    pub table: Table,
}

impl Output {
    pub fn envelope(&self) -> Value {
        json!({
            "command": self.command,
            "parameters": self.parameters,
            "schema_version": SCHEMA_VERSION,
            "data": self.data,
        })
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => {
                let mut s = to_json_string(&self.envelope())?;
                s.push('\n');
                Ok(s)
            }
            Format::Csv => table_to_csv(&self.table),
        }
    }
}

fn cell_text(v: &Value) -> Result<String> {
    Ok(match v {
        Value::Null => String::new(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) if n.is_f64() => fmt_float(n.as_f64().unwrap_or(f64::NAN)),
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        other => to_json_string(other)?,
    })
}

pub fn table_to_csv(table: &Table) -> Result<String> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    let io_err = |e: csv::Error| Error::Consistency(format!("csv output failed: {e}"));
    w.write_record(&table.columns).map_err(io_err)?;
    for row in &table.rows {
        let cells = row.iter().map(cell_text).collect::<Result<Vec<String>>>()?;
        w.write_record(&cells).map_err(io_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Consistency(format!("csv output failed: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv of UTF-8 cells is UTF-8"))
}
