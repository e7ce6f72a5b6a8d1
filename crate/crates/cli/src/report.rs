//! Structured reports and CSV tables.

use serde::{Deserialize, Serialize};
use std::io;

use serde_json::ser::{Formatter, PrettyFormatter};

use crate::model::ModelSpec;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Int(u64),
    Num(f64),
    Text(String),
}

impl From<f64> for Scalar {
    fn from(x: f64) -> Self {
        if x.is_finite() {
            Scalar::Num(x)
        } else if x.is_nan() {
            Scalar::Text("nan".into())
        } else if x > 0.0 {
            Scalar::Text("inf".into())
        } else {
            Scalar::Text("-inf".into())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Quantity {
    pub name: String,
    pub value: Scalar,
    /// A bound on the numerical error, or `"exact"`.
    pub error_estimate: Scalar,
    pub route: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<String>,
}

impl Quantity {
    pub fn new(name: &str, value: f64, error_estimate: f64, route: &str) -> Self {
        Self {
            name: name.into(),
            value: value.into(),
            error_estimate: error_estimate.abs().into(),
            route: route.into(),
            exact: None,
        }
    }

    pub fn exact(name: &str, value: f64, route: &str) -> Self {
        Self {
            name: name.into(),
            value: value.into(),
            error_estimate: Scalar::Text("exact".into()),
            route: route.into(),
            exact: None,
        }
    }

    pub fn count(name: &str, value: u64, route: &str) -> Self {
        Self {
            name: name.into(),
            value: Scalar::Int(value),
            error_estimate: Scalar::Text("exact".into()),
            route: route.into(),
            exact: None,
        }
    }

    pub fn with_exact(mut self, repr: String) -> Self {
        self.exact = Some(repr);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Input {
    pub name: String,
    pub value: Scalar,
}

/// Column-major table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub data: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Self {
            name: name.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            data: vec![Vec::new(); columns.len()],
        }
    }

    pub fn push(&mut self, row: &[f64]) {
        assert_eq!(row.len(), self.columns.len());
        for (col, v) in self.data.iter_mut().zip(row) {
            col.push(*v);
        }
    }

    pub fn rows(&self) -> usize {
        self.data.first().map_or(0, Vec::len)
    }

    /// RFC 4180 CSV with a one-line header.
    pub fn to_csv(&self) -> anyhow::Result<String> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::CRLF)
            .from_writer(Vec::new());
        w.write_record(&self.columns)?;
        for i in 0..self.rows() {
            w.write_record(self.data.iter().map(|c| format_float(c[i])))?;
        }
        Ok(String::from_utf8(w.into_inner()?)?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub seed: Option<u64>,
    pub model: Option<ModelSpec>,
    pub inputs: Vec<Input>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub case: Option<String>,
    pub quantities: Vec<Quantity>,
    pub tables: Vec<Table>,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn new(command: &str, seed: Option<u64>, model: Option<ModelSpec>) -> Self {
        Self {
            tool: "s1yamabe".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            seed,
            model,
            inputs: Vec::new(),
            case: None,
            quantities: Vec::new(),
            tables: Vec::new(),
            warnings: Vec::new(),
        }
    }

    pub fn input(&mut self, name: &str, value: impl Into<Scalar>) {
        self.inputs.push(Input {
            name: name.into(),
            value: value.into(),
        });
    }

    pub fn quantity(&mut self, q: Quantity) {
        self.quantities.push(q);
    }

    pub fn get(&self, name: &str) -> Option<&Quantity> {
        self.quantities.iter().find(|q| q.name == name)
    }

    pub fn to_text(&self) -> anyhow::Result<String> {
        let mut out = Vec::new();
        let mut ser =
            serde_json::Serializer::with_formatter(&mut out, Canonical(PrettyFormatter::new()));
        self.serialize(&mut ser)?;
        out.push(b'\n');
        Ok(String::from_utf8(out)?)
    }

    pub fn from_text(text: &str) -> anyhow::Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

impl From<String> for Scalar {
    fn from(s: String) -> Self {
        Scalar::Text(s)
    }
}

impl From<&str> for Scalar {
    fn from(s: &str) -> Self {
        Scalar::Text(s.into())
    }
}

impl From<u64> for Scalar {
    fn from(x: u64) -> Self {
        Scalar::Int(x)
    }
}

/// Seventeen significant digits, enough to round-trip every `f64`.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// Pretty printing with every float written by [`format_float`].
struct Canonical<'a>(PrettyFormatter<'a>);

impl Formatter for Canonical<'_> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        w.write_all(format_float(value).as_bytes())
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }

    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }

    fn begin_array_value<W: ?Sized + io::Write>(
        &mut self,
        w: &mut W,
        first: bool,
    ) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }

    fn end_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }

    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }

    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }

    fn begin_object_key<W: ?Sized + io::Write>(
        &mut self,
        w: &mut W,
        first: bool,
    ) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }

    fn end_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_bit_identical() {
        let mut r = Report::new("test", Some(7), None);
        r.quantity(Quantity::new("x", 0.1 + 0.2, 1e-17, "closed_form"));
        r.quantity(Quantity::exact("y", 1.0 / 3.0, "closed_form"));
        r.quantity(Quantity::exact("z", f64::INFINITY, "closed_form"));
        let mut t = Table::new("t", &["a", "b"]);
        t.push(&[1.0, std::f64::consts::PI]);
        r.tables.push(t);
        let text = r.to_text().unwrap();
        let back = Report::from_text(&text).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.to_text().unwrap(), text);
        assert!(text.contains("3.0000000000000004e-1"));
    }

    #[test]
    fn csv_header_and_rows() {
        let mut t = Table::new("t", &["ell", "j"]);
        t.push(&[1.0, 2.0]);
        let csv = t.to_csv().unwrap();
        assert_eq!(
            csv,
            "ell,j\r\n1.0000000000000000e0,2.0000000000000000e0\r\n"
        );
    }
}
