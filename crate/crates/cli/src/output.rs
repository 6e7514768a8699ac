//! Output formatting: every float is printed with 15 significant digits.

use std::str::FromStr;

use serde::Serialize;
use serde_json::{Number, Value};

/// `v` with 15 significant digits, in fixed notation when reasonable.
pub fn sig15(v: f64) -> String {
    if !v.is_finite() {
        return v.to_string();
    }
    if v == 0.0 {
        return "0".into();
    }
    let sci = format!("{v:.14e}");
    let exp: i32 = sci[sci.find('e').unwrap() + 1..].parse().unwrap();
    if (-5..15).contains(&exp) {
        format!("{:.*}", (14 - exp) as usize, v)
    } else {
        sci
    }
}

fn reformat(v: &mut Value) {
    match v {
        Value::Number(n) if !n.is_i64() && !n.is_u64() => {
            if let Some(f) = n.as_f64() {
                *n = Number::from_str(&sig15(f)).expect("formatted float is a JSON number");
            }
        }
        Value::Array(a) => a.iter_mut().for_each(reformat),
        Value::Object(o) => o.values_mut().for_each(reformat),
        _ => {}
    }
}

pub fn to_json<T: Serialize>(x: &T) -> Result<String, String> {
    let mut v = serde_json::to_value(x).map_err(|e| e.to_string())?;
    reformat(&mut v);
    serde_json::to_string_pretty(&v).map_err(|e| e.to_string())
}

/// Integer given as decimal digits, kept exact in JSON output.
pub fn big_number(digits: &str) -> Value {
    Value::Number(Number::from_str(digits).expect("decimal integer"))
}

#[derive(Clone, Debug)]
pub enum Cell {
    Num(f64),
    Text(String),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Num(v) => sig15(*v),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(v) if v.is_finite() => Value::Number(Number::from_str(&sig15(*v)).unwrap()),
            Cell::Num(_) => Value::Null,
            Cell::Text(s) => Value::String(s.clone()),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.into())
    }
}

/// Rows of named columns.
#[derive(Clone, Debug, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn csv(&self) -> Result<String, String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns).map_err(|e| e.to_string())?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::render)).map_err(|e| e.to_string())?;
        }
        String::from_utf8(w.into_inner().map_err(|e| e.to_string())?).map_err(|e| e.to_string())
    }

    pub fn json(&self) -> Result<String, String> {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| Value::Object(self.columns.iter().cloned().zip(r.iter().map(Cell::json)).collect()))
            .collect();
        serde_json::to_string_pretty(&rows).map_err(|e| e.to_string())
    }

    pub fn plain(&self) -> String {
        let cells: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(Cell::render).collect()).collect();
        let widths: Vec<usize> = (0..self.columns.len())
            .map(|i| cells.iter().map(|r| r[i].len()).chain([self.columns[i].len()]).max().unwrap_or(0))
            .collect();
        let line = |r: &[String]| {
            r.iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:<w$}"))
                .collect::<Vec<_>>()
                .join("  ")
                .trim_end()
                .to_string()
        };
        let mut out = line(&self.columns);
        out.push('\n');
        for r in &cells {
            out.push_str(&line(r));
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fifteen_digits() {
        assert_eq!(sig15(706.3248135408), "706.324813540800");
        assert_eq!(sig15(-0.25), "-0.250000000000000");
        assert_eq!(sig15(1.5e-9), "1.50000000000000e-9");
        assert_eq!(sig15(0.0), "0");
        let x = 0.1 + 0.2;
        assert_eq!(sig15(x).parse::<f64>().unwrap(), 0.3);
    }

    #[test]
    fn json_floats_are_rewritten() {
        #[derive(Serialize)]
        struct S {
            a: f64,
            b: u32,
            c: Option<f64>,
        }
        let s = to_json(&S { a: 1.0 / 3.0, b: 7, c: None }).unwrap();
        assert!(s.contains("\"a\": 0.333333333333333"), "{s}");
        assert!(s.contains("\"b\": 7"));
        assert!(s.contains("\"c\": null"));
    }
}
