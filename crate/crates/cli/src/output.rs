//! Streaming CSV and JSON writers.
//!
//! Reals are written in scientific notation with the requested number of
//! significant digits. JSON carries them as strings so no digits are lost to
//! a double-precision parser.

use std::io::Write;

use anyhow::Result;
use serde_json::{json, Map, Value};

use crate::spec::{OutputFormat, TableSpec};
use crate::tables::{Cell, Row};

pub trait RowSink {
    fn begin(&mut self, spec: &TableSpec, columns: &[&str]) -> Result<()>;
    fn row(&mut self, row: &Row) -> Result<()>;
    /// Called once after the last row; `failures` lists rows that errored.
    fn finish(&mut self, failures: &[String]) -> Result<()>;
}

pub fn sink_for<'a, W: Write + 'a>(format: OutputFormat, out: W) -> Box<dyn RowSink + 'a> {
    match format {
        OutputFormat::Csv => Box::new(CsvSink::new(out)),
        OutputFormat::Json => Box::new(JsonSink::new(out)),
    }
}

pub struct CsvSink<W: Write> {
    out: W,
    digits: u32,
}

impl<W: Write> CsvSink<W> {
    pub fn new(out: W) -> Self {
        Self { out, digits: 0 }
    }
}

impl<W: Write> RowSink for CsvSink<W> {
    fn begin(&mut self, spec: &TableSpec, columns: &[&str]) -> Result<()> {
        self.digits = spec.precision_digits;
        writeln!(self.out, "{}", spec.header_line())?;
        writeln!(self.out, "{}", columns.join(","))?;
        self.out.flush()?;
        Ok(())
    }

    fn row(&mut self, row: &Row) -> Result<()> {
        let fields: Vec<String> = row.iter().map(|c| c.render(self.digits)).collect();
        writeln!(self.out, "{}", fields.join(","))?;
        self.out.flush()?;
        Ok(())
    }

    fn finish(&mut self, _failures: &[String]) -> Result<()> {
        self.out.flush()?;
        Ok(())
    }
}

pub struct JsonSink<W: Write> {
    out: W,
    digits: u32,
    columns: Vec<String>,
    first: bool,
}

impl<W: Write> JsonSink<W> {
    pub fn new(out: W) -> Self {
        Self {
            out,
            digits: 0,
            columns: Vec::new(),
            first: true,
        }
    }
}

fn json_cell(cell: &Cell, digits: u32) -> Value {
    match cell {
        Cell::Int(v) => json!(v),
        other => Value::String(other.render(digits)),
    }
}

impl<W: Write> RowSink for JsonSink<W> {
    fn begin(&mut self, spec: &TableSpec, columns: &[&str]) -> Result<()> {
        self.digits = spec.precision_digits;
        self.columns = columns.iter().map(|c| c.to_string()).collect();
        write!(
            self.out,
            "{{\"meta\":{},\"columns\":{},\"rows\":[",
            serde_json::to_string(spec)?,
            serde_json::to_string(&self.columns)?
        )?;
        Ok(())
    }

    fn row(&mut self, row: &Row) -> Result<()> {
        let obj: Map<String, Value> = self
            .columns
            .iter()
            .zip(row)
            .map(|(k, c)| (k.clone(), json_cell(c, self.digits)))
            .collect();
        if !self.first {
            write!(self.out, ",")?;
        }
        self.first = false;
        write!(self.out, "\n{}", Value::Object(obj))?;
        self.out.flush()?;
        Ok(())
    }

    fn finish(&mut self, failures: &[String]) -> Result<()> {
        writeln!(self.out, "\n],\"failures\":{}}}", serde_json::to_string(failures)?)?;
        self.out.flush()?;
        Ok(())
    }
}
