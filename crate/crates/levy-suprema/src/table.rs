//! Result tables and their CSV / JSON serialisation.
//!
//! Floats are written like C's `%.17g`, which round-trips every `f64` exactly.

use std::fmt::Write as _;
use std::io::Write;

use crate::error::AppResult;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Float(f64),
    Int(i64),
    Bool(bool),
    Text(String),
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

fn strip_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// `%.17g`.
pub fn format_float(v: f64) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return if v.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{v:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..17).contains(&exp) {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{}{:02}", strip_fraction(mantissa), sign, exp.abs())
    } else {
        let fixed = format!("{:.*}", (16 - exp) as usize, v);
        strip_fraction(&fixed).to_string()
    }
}

impl Cell {
    pub fn render(&self) -> String {
        match self {
            Cell::Float(v) => format_float(*v),
            Cell::Int(v) => v.to_string(),
            Cell::Bool(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    /// Reads a rendered cell back; integers and floats share one syntax, so an integral
    /// float comes back as `Int` and renders identically.
    pub fn parse(s: &str) -> Cell {
        match s {
            "true" => return Cell::Bool(true),
            "false" => return Cell::Bool(false),
            _ => {}
        }
        if let Ok(i) = s.parse::<i64>() {
            if i.to_string() == s {
                return Cell::Int(i);
            }
        }
        match s.parse::<f64>() {
            Ok(v) if format_float(v) == s => Cell::Float(v),
            _ => Cell::Text(s.to_string()),
        }
    }

    fn json(&self, out: &mut String) {
        match self {
            Cell::Float(v) if v.is_finite() => out.push_str(&format_float(*v)),
            Cell::Float(_) => out.push_str("null"),
            Cell::Int(v) => {
                let _ = write!(out, "{v}");
            }
            Cell::Bool(v) => {
                let _ = write!(out, "{v}");
            }
            Cell::Text(s) => out.push_str(&serde_json::to_string(s).expect("string serialises")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width");
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    pub fn write_csv<W: Write>(&self, out: W) -> AppResult<()> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::render))?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("utf-8 output")
    }

    pub fn from_csv(text: &str) -> AppResult<Self> {
        let mut r = csv::ReaderBuilder::new()
            .has_headers(true)
            .from_reader(text.as_bytes());
        let columns = r.headers()?.iter().map(str::to_string).collect();
        let mut rows = Vec::new();
        for rec in r.records() {
            rows.push(rec?.iter().map(Cell::parse).collect());
        }
        Ok(Self { columns, rows })
    }

    /// Array of objects keyed by column name.
    pub fn to_json(&self) -> String {
        let mut out = String::from("[");
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str("\n  {");
            for (j, (name, cell)) in self.columns.iter().zip(row).enumerate() {
                if j > 0 {
                    out.push_str(", ");
                }
                out.push_str(&serde_json::to_string(name).expect("string serialises"));
                out.push_str(": ");
                cell.json(&mut out);
            }
            out.push('}');
        }
        out.push_str(if self.rows.is_empty() { "]\n" } else { "\n]\n" });
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_c_seventeen_digit_general_format() {
        assert_eq!(format_float(1.0), "1");
        assert_eq!(format_float(0.5), "0.5");
        assert_eq!(format_float(0.1), "0.10000000000000001");
        assert_eq!(format_float(5e-5), "5.0000000000000002e-05");
        assert_eq!(format_float(1e-4), "0.0001");
        assert_eq!(format_float(2.0f64.sqrt()), "1.4142135623730951");
        assert_eq!(format_float(1e17), "1e+17");
        assert_eq!(format_float(123456789012345680.0), "1.2345678901234568e+17");
        assert_eq!(format_float(-2.5), "-2.5");
        assert_eq!(format_float(0.0), "0");
        assert_eq!(format_float(f64::INFINITY), "inf");
    }

    #[test]
    fn floats_round_trip() {
        for v in [0.1, 1.0 / 3.0, 6.02e23, 1e-300, 5e-324, f64::MAX, -7.25, 999.9999999999999] {
            assert_eq!(format_float(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn csv_round_trip_is_byte_identical() {
        let mut t = Table::new(&["t", "x", "p", "n", "flag", "note"]);
        t.push(vec![1.0.into(), 0.1.into(), (1.0f64 / 3.0).into(), 12usize.into(), false.into(), "a,b".into()]);
        t.push(vec![1e-7.into(), 2.5.into(), f64::NAN.into(), 0usize.into(), true.into(), "".into()]);
        let text = t.to_csv();
        assert!(!text.contains('\r'));
        let back = Table::from_csv(&text).unwrap();
        assert_eq!(back.to_csv(), text);
    }

    #[test]
    fn json_is_valid() {
        let mut t = Table::new(&["x", "v", "ok"]);
        t.push(vec![1e-5.into(), f64::INFINITY.into(), true.into()]);
        let v: serde_json::Value = serde_json::from_str(&t.to_json()).unwrap();
        assert_eq!(v[0]["x"].as_f64().unwrap(), 1e-5);
        assert!(v[0]["v"].is_null());
        assert_eq!(v[0]["ok"], serde_json::Value::Bool(true));
    }

    proptest::proptest! {
        #[test]
        fn any_float_round_trips(bits in proptest::num::u64::ANY) {
            let v = f64::from_bits(bits);
            let text = format_float(v);
            if v.is_nan() {
                proptest::prop_assert_eq!(text, "nan");
            } else {
                proptest::prop_assert_eq!(text.parse::<f64>().unwrap().to_bits(), v.to_bits());
            }
        }

        #[test]
        fn random_tables_round_trip(rows in proptest::collection::vec(
            (proptest::num::f64::ANY, -1000i64..1000, proptest::bool::ANY, "[a-z ,\"]{0,6}"), 0..8)
        ) {
            let mut t = Table::new(&["f", "i", "b", "s"]);
            for (f, i, b, s) in rows {
                t.push(vec![Cell::Float(f), Cell::Int(i), Cell::Bool(b), Cell::Text(s)]);
            }
            let text = t.to_csv();
            proptest::prop_assert_eq!(Table::from_csv(&text).unwrap().to_csv(), text);
        }
    }
}
