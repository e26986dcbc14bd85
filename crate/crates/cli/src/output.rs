use std::io::Write;

use clap::ValueEnum;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// A command result: the JSON document plus the flat table used for CSV.
pub struct Rendered {
    pub json: Value,
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    /// False when the command ran a comparison that did not hold.
    pub ok: bool,
}

impl Rendered {
    pub fn new(json: Value, headers: Vec<&'static str>, rows: Vec<Vec<String>>) -> Self {
        Self { json, headers, rows, ok: true }
    }

    pub fn with_status(mut self, ok: bool) -> Self {
        self.ok = ok;
        self
    }

    pub fn write(&self, format: Format, out: &mut impl Write) -> WriteResult {
        match format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, &self.json)?;
                writeln!(out)?;
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(&self.headers)?;
                for row in &self.rows {
                    w.write_record(row)?;
                }
                w.flush()?;
            }
        }
        Ok(())
    }
}

pub type WriteResult = Result<(), Box<dyn std::error::Error>>;
