//! Coefficient records and table writers (JSON and CSV).
//!
//! Floats are written in the shortest form that parses back to the same
//! `f64`, which is at least 15 significant digits whenever the value needs
//! them. CSV uses a header row and LF line endings.

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::analysis::SweepRow;
use crate::digital::{Coefficients, DigitalIIR};
use crate::error::{Error, Result};
use crate::filter::{AnalogPolynomialFilter, ReferenceKind};
use crate::transient::SimulationResult;
use crate::udb::{DampingConstant, Order};

pub const CSV_COLUMNS: [&str; 9] = ["kind", "n", "zeta", "omega_n", "sample_rate", "index", "b", "a", "pole_modulus"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" | "txt" => Ok(Format::Text),
            other => Err(Error::Usage(format!("unknown format '{other}' (json, csv, text)"))),
        }
    }
}

/// Transfer-function coefficients of one design.
///
/// Analog records have no sample rate: `b` is the numerator constant and `a`
/// the denominator in descending powers of `s`. Digital records hold `b`
/// and `a` in ascending powers of `z^-1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientRecord {
    pub kind: ReferenceKind,
    pub n: usize,
    pub zeta: Option<f64>,
    pub omega_n: f64,
    pub sample_rate: Option<f64>,
    pub b: Vec<f64>,
    pub a: Vec<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub pole_moduli: Vec<f64>,
}

impl CoefficientRecord {
    pub fn analog(filter: &AnalogPolynomialFilter) -> Self {
        CoefficientRecord {
            kind: filter.kind(),
            n: filter.n(),
            zeta: filter.zeta().map(DampingConstant::get),
            omega_n: filter.omega_n(),
            sample_rate: None,
            b: vec![filter.numerator()],
            a: filter.denom().to_vec(),
            pole_moduli: Vec::new(),
        }
    }

    /// Digital record with the pole moduli of `a` attached.
    pub fn digital(filter: &AnalogPolynomialFilter, iir: &DigitalIIR) -> Result<Self> {
        Ok(CoefficientRecord {
            sample_rate: Some(iir.sample_rate()),
            b: iir.b().to_vec(),
            a: iir.a().to_vec(),
            pole_moduli: iir.pole_moduli()?,
            ..CoefficientRecord::analog(filter)
        })
    }

    pub fn to_analog(&self) -> Result<AnalogPolynomialFilter> {
        if self.sample_rate.is_some() {
            return Err(Error::InvalidRecord("record is digital".into()));
        }
        let zeta = self.zeta.map(DampingConstant::new).transpose()?;
        let filter = AnalogPolynomialFilter::from_denominator(self.a.clone(), self.omega_n, self.kind, zeta)?;
        if filter.n() != self.n || self.b.len() != 1 {
            return Err(Error::InvalidRecord("order or numerator does not match the denominator".into()));
        }
        Ok(filter)
    }

    pub fn to_digital(&self) -> Result<DigitalIIR> {
        let fs = self
            .sample_rate
            .ok_or_else(|| Error::InvalidRecord("record has no sample rate".into()))?;
        DigitalIIR::new(self.b.clone(), self.a.clone(), fs)
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::InvalidRecord(e.to_string()))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let record: CoefficientRecord = serde_json::from_str(text).map_err(|e| Error::InvalidRecord(e.to_string()))?;
        Order::new(record.n)?;
        Ok(record)
    }

    /// One row per coefficient index; columns without a value at that index
    /// are left empty. Record-level fields repeat on every row.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        w.write_record(CSV_COLUMNS).map_err(csv_error)?;
        let rows = self.a.len().max(self.b.len()).max(self.pole_moduli.len());
        let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        let at = |v: &[f64], i: usize| opt(v.get(i).copied());
        for i in 0..rows {
            w.write_record([
                self.kind.as_str().to_string(),
                self.n.to_string(),
                opt(self.zeta),
                self.omega_n.to_string(),
                opt(self.sample_rate),
                i.to_string(),
                at(&self.b, i),
                at(&self.a, i),
                at(&self.pole_moduli, i),
            ])
            .map_err(csv_error)?;
        }
        finish(w)
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut reader = csv::Reader::from_reader(text.as_bytes());
        let header = reader.headers().map_err(csv_error)?.clone();
        if header.iter().ne(CSV_COLUMNS) {
            return Err(Error::InvalidRecord(format!("unexpected header {:?}", header)));
        }
        let mut record: Option<CoefficientRecord> = None;
        for (line, row) in reader.records().enumerate() {
            let row = row.map_err(csv_error)?;
            let field = |k: usize| row.get(k).unwrap_or("");
            let number = |k: usize| -> Result<Option<f64>> {
                let s = field(k);
                if s.is_empty() {
                    return Ok(None);
                }
                s.parse()
                    .map(Some)
                    .map_err(|_| Error::InvalidRecord(format!("row {line}: '{s}' is not a number")))
            };
            let index: usize = field(5)
                .parse()
                .map_err(|_| Error::InvalidRecord(format!("row {line}: bad index")))?;
            if index != line {
                return Err(Error::InvalidRecord(format!("row {line}: index {index} out of sequence")));
            }
            let rec = match record.as_mut() {
                Some(r) => r,
                None => record.insert(CoefficientRecord {
                    kind: field(0).parse()?,
                    n: field(1)
                        .parse()
                        .map_err(|_| Error::InvalidRecord(format!("bad order '{}'", field(1))))?,
                    zeta: number(2)?,
                    omega_n: number(3)?.ok_or_else(|| Error::InvalidRecord("missing omega_n".into()))?,
                    sample_rate: number(4)?,
                    b: Vec::new(),
                    a: Vec::new(),
                    pole_moduli: Vec::new(),
                }),
            };
            for (column, target) in [(6, &mut rec.b), (7, &mut rec.a), (8, &mut rec.pole_moduli)] {
                if let Some(v) = number(column)? {
                    if target.len() != index {
                        return Err(Error::InvalidRecord(format!("row {line}: gap in column {}", CSV_COLUMNS[column])));
                    }
                    target.push(v);
                }
            }
        }
        let record = record.ok_or_else(|| Error::InvalidRecord("no rows".into()))?;
        Order::new(record.n)?;
        Ok(record)
    }
}

/// Sweep table with a header row.
pub fn sweep_csv(rows: &[SweepRow]) -> Result<String> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    for row in rows {
        w.serialize(row).map_err(csv_error)?;
    }
    finish(w)
}

/// `t,y` table.
pub fn time_csv(result: &SimulationResult) -> Result<String> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(["t", "y"]).map_err(csv_error)?;
    for (t, y) in result.t.iter().zip(&result.y) {
        w.write_record([t.to_string(), y.to_string()]).map_err(csv_error)?;
    }
    finish(w)
}

pub(crate) fn finish(w: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = w.into_inner().map_err(|e| Error::InvalidRecord(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::InvalidRecord(e.to_string()))
}

pub(crate) fn csv_error(e: csv::Error) -> Error {
    Error::InvalidRecord(e.to_string())
}
