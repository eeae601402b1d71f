//! Tabular results and their CSV/JSON encodings.
//!
//! Floats are written with 17 significant digits so every value
//! round-trips exactly; CSV uses `,`, `.` and LF only.

use std::fmt::Write as _;

use serde::ser::{Serialize, SerializeMap, Serializer};

use crate::config::Format;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
    Bool(bool),
    /// Missing value, e.g. an unstable point.
    Missing(&'static str),
}

impl Cell {
    pub fn opt(v: Option<f64>, missing: &'static str) -> Cell {
        v.map_or(Cell::Missing(missing), Cell::Num)
    }

    fn csv(&self) -> String {
        match self {
            Cell::Num(x) => fmt_f64(*x),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Missing(m) => (*m).to_string(),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Cell::Num(x) if x.is_finite() => s.serialize_f64(*x),
            Cell::Num(_) => s.serialize_none(),
            Cell::Int(i) => s.serialize_i64(*i),
            Cell::Text(t) => s.serialize_str(t),
            Cell::Bool(b) => s.serialize_bool(*b),
            Cell::Missing(m) => s.serialize_str(m),
        }
    }
}

/// `{:.16e}`: 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Gate {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Report {
    pub command: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub summary: Vec<(String, Cell)>,
    pub gates: Vec<Gate>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            ..Default::default()
        }
    }

    pub fn columns(mut self, cols: &[&str]) -> Self {
        self.columns = cols.iter().map(|c| c.to_string()).collect();
        self
    }

    pub fn push_row(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn note(&mut self, key: impl Into<String>, value: impl Into<Cell>) {
        self.summary.push((key.into(), value.into()));
    }

    pub fn gate(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.gates.push(Gate {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        });
    }

    pub fn failed_gates(&self) -> Vec<&Gate> {
        self.gates.iter().filter(|g| !g.passed).collect()
    }

    /// Data table (header + rows), then `# key,value` summary and
    /// `# gate,name,pass|fail,detail` lines.
    pub fn to_csv(&self, table: bool, summary: bool) -> String {
        let mut out = String::new();
        if table {
            out.push_str(&self.columns.join(","));
            out.push('\n');
            for row in &self.rows {
                let cells: Vec<String> = row.iter().map(Cell::csv).collect();
                out.push_str(&cells.join(","));
                out.push('\n');
            }
        }
        if summary {
            for (k, v) in &self.summary {
                let _ = writeln!(out, "# {k},{}", v.csv());
            }
            for g in &self.gates {
                let verdict = if g.passed { "pass" } else { "fail" };
                let _ = writeln!(out, "# gate,{},{verdict},{}", g.name, g.detail.replace(',', ";"));
            }
        }
        out
    }

    pub fn to_json(&self, table: bool, summary: bool) -> String {
        let view = JsonView {
            report: self,
            table,
            summary,
        };
        let mut s = serde_json::to_string_pretty(&view).expect("report serialises");
        s.push('\n');
        s
    }

    pub fn render(&self, format: Format, table: bool, summary: bool) -> String {
        match format {
            Format::Csv => self.to_csv(table, summary),
            Format::Json => self.to_json(table, summary),
        }
    }
}

struct JsonView<'a> {
    report: &'a Report,
    table: bool,
    summary: bool,
}

struct Pairs<'a>(&'a [(String, Cell)]);

impl Serialize for Pairs<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in self.0 {
            m.serialize_entry(k, v)?;
        }
        m.end()
    }
}

struct Gates<'a>(&'a [Gate]);

impl Serialize for Gates<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for g in self.0 {
            m.serialize_entry(
                &g.name,
                &serde_json::json!({ "passed": g.passed, "detail": g.detail }),
            )?;
        }
        m.end()
    }
}

impl Serialize for JsonView<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let r = self.report;
        let mut m = s.serialize_map(None)?;
        m.serialize_entry("command", &r.command)?;
        if self.table {
            m.serialize_entry("columns", &r.columns)?;
            m.serialize_entry("rows", &r.rows)?;
        }
        if self.summary {
            m.serialize_entry("summary", &Pairs(&r.summary))?;
            m.serialize_entry("gates", &Gates(&r.gates))?;
        }
        m.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut r = Report::new("demo").columns(&["x", "y"]);
        r.push_row(vec![Cell::Num(0.1), Cell::Missing("unstable")]);
        r.push_row(vec![Cell::Num(-2.0), Cell::Num(1.0 / 3.0)]);
        r.note("max", 0.5);
        r.gate("finite", true, "all values finite");
        r
    }

    #[test]
    fn csv_layout() {
        let csv = sample().to_csv(true, true);
        let lines: Vec<&str> = csv.split('\n').collect();
        assert_eq!(lines[0], "x,y");
        assert_eq!(lines[1], "1.0000000000000001e-1,unstable");
        assert_eq!(lines[2], "-2.0000000000000000e0,3.3333333333333331e-1");
        assert_eq!(lines[3], "# max,5.0000000000000000e-1");
        assert_eq!(lines[4], "# gate,finite,pass,all values finite");
        assert!(!csv.contains('\r'));
        assert!(csv.ends_with('\n'));
    }

    #[test]
    fn seventeen_digits_round_trip() {
        for x in [0.1, 1.0 / 3.0, std::f64::consts::PI * 1e-300, -7.5e12, f64::MIN_POSITIVE] {
            assert_eq!(fmt_f64(x).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn json_layout() {
        let v: serde_json::Value = serde_json::from_str(&sample().to_json(true, true)).unwrap();
        assert_eq!(v["command"], "demo");
        assert_eq!(v["rows"][0][1], "unstable");
        assert_eq!(v["rows"][1][1].as_f64().unwrap(), 1.0 / 3.0);
        assert_eq!(v["summary"]["max"], 0.5);
        assert_eq!(v["gates"]["finite"]["passed"], true);
        let only_summary: serde_json::Value = serde_json::from_str(&sample().to_json(false, true)).unwrap();
        assert!(only_summary.get("rows").is_none());
    }
}
