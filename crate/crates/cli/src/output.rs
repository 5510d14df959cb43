use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use qka::numerics::fmt_float;
use rug::{Complex, Float};
use serde_json::Value;

use crate::args::Format;

/// Where and how a table goes.
pub struct Sink {
    pub format: Format,
    pub path: Option<PathBuf>,
    /// Significant digits for arbitrary-precision values (at least 17).
    pub digits: usize,
}

impl Sink {
    pub fn new(format: Format, path: Option<PathBuf>, prec: u32) -> Self {
        let digits = ((prec as f64 * std::f64::consts::LOG10_2) as usize).saturating_sub(5).max(17);
        Sink { format, path, digits }
    }

    pub fn float(&self, x: &Float) -> String {
        fmt_float(x, self.digits)
    }

    pub fn re(&self, z: &Complex) -> String {
        self.float(z.real())
    }

    pub fn im(&self, z: &Complex) -> String {
        self.float(z.imag())
    }

    fn writer(&self) -> io::Result<Box<dyn Write>> {
        Ok(match &self.path {
            Some(p) => Box::new(File::create(p)?),
            None => Box::new(io::stdout().lock()),
        })
    }

    /// Rows are JSON objects sharing the keys in `columns`.
    pub fn emit(&self, columns: &[&str], rows: &[Value]) -> io::Result<()> {
        let mut w = self.writer()?;
        match self.format {
            Format::Json => {
                let v = if rows.len() == 1 { rows[0].clone() } else { Value::Array(rows.to_vec()) };
                serde_json::to_writer_pretty(&mut w, &v)?;
                writeln!(w)?;
            }
            Format::Csv => {
                let mut cw = csv::Writer::from_writer(w);
                cw.write_record(columns)?;
                for r in rows {
                    let rec: Vec<String> = columns.iter().map(|c| cell(&r[*c])).collect();
                    cw.write_record(&rec)?;
                }
                cw.flush()?;
            }
        }
        Ok(())
    }
}

/// 17 significant digits for f64 values.
pub fn f17(x: f64) -> String {
    if x == 0.0 {
        "0".into()
    } else if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        Value::Array(a) => a.iter().map(cell).collect::<Vec<_>>().join(";"),
        other => other.to_string(),
    }
}
