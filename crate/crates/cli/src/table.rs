use std::io::Write;

use serde::Serialize;
use serde_json::{json, Map, Value as Json};

use crate::args::Format;
use crate::CliError;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
    Missing,
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Missing, Cell::Float)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::Int(i64::from(v))
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

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Text(v.to_string())
    }
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format!("{v:.16e}"),
            Cell::Text(s) if s.contains([',', '"', '\n']) => {
                format!("\"{}\"", s.replace('"', "\"\""))
            }
            Cell::Text(s) => s.clone(),
            Cell::Missing => String::new(),
        }
    }

    fn json(&self) -> Json {
        match self {
            Cell::Int(v) => json!(v),
            Cell::Float(v) => json!(v),
            Cell::Text(s) => json!(s),
            Cell::Missing => Json::Null,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Provenance {
    pub program: String,
    pub version: String,
    pub command: String,
    pub args: Vec<String>,
    pub tol: f64,
    pub parallelism: usize,
}

impl Provenance {
    fn line(&self) -> String {
        format!(
            "# {} {} {} | args: {} | tol={:e} parallelism={}",
            self.program,
            self.version,
            self.command,
            self.args.join(" "),
            self.tol,
            self.parallelism
        )
    }
}

#[derive(Debug, Clone)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Table {
            columns,
            rows: Vec::new(),
        }
    }

    /// Rejects the table if any numeric cell is NaN or infinite.
    pub fn check_finite(&self) -> Result<(), CliError> {
        for (i, row) in self.rows.iter().enumerate() {
            for (col, cell) in self.columns.iter().zip(row) {
                if let Cell::Float(v) = cell {
                    if !v.is_finite() {
                        return Err(CliError::Numeric(format!("row {i}: column `{col}` is {v}")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn write(
        &self,
        out: &mut dyn Write,
        format: Format,
        prov: &Provenance,
    ) -> std::io::Result<()> {
        match format {
            Format::Csv => {
                writeln!(out, "{}", prov.line())?;
                writeln!(out, "{}", self.columns.join(","))?;
                for row in &self.rows {
                    let cells: Vec<String> = row.iter().map(Cell::csv).collect();
                    writeln!(out, "{}", cells.join(","))?;
                }
            }
            Format::Json => {
                let records: Vec<Json> = self
                    .rows
                    .iter()
                    .map(|row| {
                        let obj: Map<String, Json> = self
                            .columns
                            .iter()
                            .zip(row)
                            .map(|(c, v)| (c.to_string(), v.json()))
                            .collect();
                        Json::Object(obj)
                    })
                    .collect();
                let doc = json!({ "provenance": prov, "records": records });
                serde_json::to_writer_pretty(&mut *out, &doc)?;
                writeln!(out)?;
            }
        }
        Ok(())
    }
}
