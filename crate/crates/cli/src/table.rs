//! Result tables and their CSV and JSON encodings.

use std::io::Write;

use serde_json::{json, Map, Value};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Real(f64),
    Count(u64),
    Text(String),
    Flag(bool),
}

impl Cell {
    /// Reals carry 17 significant digits so that every value round-trips.
    fn to_csv(&self) -> String {
        match self {
            Cell::Real(x) if x.is_finite() => format!("{x:.16e}"),
            Cell::Real(x) => x.to_string(),
            Cell::Count(n) => n.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Flag(b) => b.to_string(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            // non-finite reals become null
            Cell::Real(x) => Value::from(*x),
            Cell::Count(n) => Value::from(*n),
            Cell::Text(s) => Value::from(s.as_str()),
            Cell::Flag(b) => Value::from(*b),
        }
    }

    pub fn as_real(&self) -> Option<f64> {
        match self {
            Cell::Real(x) => Some(*x),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Table { columns, rows: Vec::new() }
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| *c == name)
    }

    /// `#`-prefixed `header` lines, then the column row and the data.
    pub fn write_csv<W: Write>(&self, mut out: W, header: &str) -> Result<(), CliError> {
        for line in header.lines() {
            if line.is_empty() {
                writeln!(out, "#")?;
            } else {
                writeln!(out, "# {line}")?;
            }
        }
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.columns).map_err(csv_error)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::to_csv)).map_err(csv_error)?;
        }
        w.flush()?;
        Ok(())
    }

    /// `{"config": …, "columns": […], "rows": [{column: value, …}, …]}`
    pub fn to_json(&self, config: Value) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(c, v)| (c.to_string(), v.to_json()))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        json!({ "config": config, "columns": self.columns, "rows": rows })
    }
}

fn csv_error(e: csv::Error) -> CliError {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => CliError::Io(io),
        other => CliError::Io(std::io::Error::other(format!("{other:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new(vec!["x", "n", "mode", "ok"]);
        t.rows.push(vec![Cell::Real(0.1), Cell::Count(3), Cell::Text("finite-T".into()), Cell::Flag(true)]);
        t.rows.push(vec![Cell::Real(-1.0 / 3.0), Cell::Count(0), Cell::Text("zero-T".into()), Cell::Flag(false)]);
        t
    }

    #[test]
    fn csv_layout() {
        let mut buf = Vec::new();
        sample().write_csv(&mut buf, "command = \"force\"\n\n[x]").unwrap();
        let text = String::from_utf8(buf).unwrap();
        let expected = "# command = \"force\"\n#\n# [x]\nx,n,mode,ok\n\
                        1.0000000000000001e-1,3,finite-T,true\n\
                        -3.3333333333333331e-1,0,zero-T,false\n";
        assert_eq!(text, expected);
    }

    #[test]
    fn csv_reals_round_trip() {
        for x in [0.1, -1.0 / 3.0, 5.045e-9, f64::MIN_POSITIVE, 1.0 + f64::EPSILON] {
            let s = Cell::Real(x).to_csv();
            assert_eq!(s.parse::<f64>().unwrap().to_bits(), x.to_bits(), "{s}");
        }
    }

    #[test]
    fn json_rows_are_objects() {
        let v = sample().to_json(json!({"command": "force"}));
        assert_eq!(v["rows"][1]["mode"], "zero-T");
        assert_eq!(v["rows"][0]["n"], 3);
        assert_eq!(v["columns"][0], "x");
    }
}
