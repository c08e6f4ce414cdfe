//! Report tables and their three renderings: aligned plain text with two
//! decimals, CSV and JSON lines at full precision.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    #[serde(alias = "plain-table")]
    Plain,
    #[serde(alias = "delimited")]
    Csv,
    #[serde(alias = "structured-records")]
    JsonLines,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Plain => "txt",
            Format::Csv => "csv",
            Format::JsonLines => "jsonl",
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Plain => "plain",
            Format::Csv => "csv",
            Format::JsonLines => "json-lines",
        })
    }
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "plain" | "plain-table" => Ok(Format::Plain),
            "csv" | "delimited" => Ok(Format::Csv),
            "json-lines" | "jsonl" | "structured-records" => Ok(Format::JsonLines),
            other => Err(format!("unknown format `{other}` (plain, csv, json-lines)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Text(String),
    Num(f64),
    Int(i64),
    Empty,
}

impl Cell {
    pub fn text(s: impl Into<String>) -> Self {
        Cell::Text(s.into())
    }

    pub fn opt(v: Option<f64>) -> Self {
        v.map_or(Cell::Empty, Cell::Num)
    }

    fn plain(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Num(v) => fmt2(*v),
            Cell::Int(i) => i.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn full(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Num(v) => full_precision(*v),
            Cell::Int(i) => i.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Num(v) if v.is_finite() => serde_json::Number::from_f64(*v)
                .map(Value::Number)
                .unwrap_or(Value::Null),
            Cell::Num(v) => Value::String(full_precision(*v)),
            Cell::Int(i) => Value::from(*i),
            Cell::Empty => Value::Null,
        }
    }
}

/// Two decimals, without a negative zero.
pub fn fmt2(v: f64) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let s = format!("{v:.2}");
    if s == "-0.00" {
        "0.00".into()
    } else {
        s
    }
}

/// Shortest round-trip representation; `inf`, `-inf`, `nan` otherwise.
pub fn full_precision(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v.is_infinite() {
        if v > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{v:?}")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    /// Short identifier used in record output, e.g. `table5`.
    pub name: String,
    pub title: String,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    /// Free text lines printed below the plain rendering.
    pub notes: Vec<String>,
}

impl Table {
    pub fn new(name: &str, title: &str, headers: &[&str]) -> Self {
        Self {
            name: name.into(),
            title: title.into(),
            headers: headers.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn row(&mut self, cells: Vec<Cell>) {
        debug_assert_eq!(cells.len(), self.headers.len());
        self.rows.push(cells);
    }

    pub fn note(&mut self, line: impl Into<String>) {
        self.notes.push(line.into());
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Plain => self.plain(),
            Format::Csv => self.csv(),
            Format::JsonLines => self.json_lines(),
        }
    }

    pub fn plain(&self) -> String {
        let cells: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(Cell::plain).collect())
            .collect();
        let mut widths: Vec<usize> = self.headers.iter().map(|h| h.chars().count()).collect();
        for r in &cells {
            for (w, c) in widths.iter_mut().zip(r) {
                *w = (*w).max(c.chars().count());
            }
        }
        let line = |items: &[String]| {
            let mut s = String::new();
            for (j, (item, w)) in items.iter().zip(&widths).enumerate() {
                if j == 0 {
                    s.push_str(&format!("{item:<w$}"));
                } else {
                    s.push_str(&format!("  {item:>w$}"));
                }
            }
            s.trim_end().to_string()
        };
        let mut out = String::new();
        out.push_str(&self.title);
        out.push('\n');
        out.push('\n');
        out.push_str(&line(&self.headers));
        out.push('\n');
        let total: usize = widths.iter().sum::<usize>() + 2 * widths.len().saturating_sub(1);
        out.push_str(&"-".repeat(total));
        out.push('\n');
        for r in &cells {
            out.push_str(&line(r));
            out.push('\n');
        }
        if !self.notes.is_empty() {
            out.push('\n');
            for n in &self.notes {
                out.push_str(n);
                out.push('\n');
            }
        }
        out
    }

    pub fn csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.headers).expect("in-memory write");
        for r in &self.rows {
            w.write_record(r.iter().map(Cell::full))
                .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
    }

    /// One JSON object per row, keys sorted, plus a `table` key.
    pub fn json_lines(&self) -> String {
        let mut out = String::new();
        for r in &self.rows {
            let mut m = Map::new();
            m.insert("table".into(), Value::String(self.name.clone()));
            for (h, c) in self.headers.iter().zip(r) {
                m.insert(h.clone(), c.json());
            }
            out.push_str(&Value::Object(m).to_string());
            out.push('\n');
        }
        out
    }
}

/// Render several tables; plain output separates them with a blank line.
pub fn render_all(tables: &[Table], format: Format) -> String {
    let parts: Vec<String> = tables.iter().map(|t| t.render(format)).collect();
    match format {
        Format::Plain => parts.join("\n"),
        _ => parts.concat(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new("t", "Title", &["name", "value", "n"]);
        t.row(vec![Cell::text("a"), Cell::Num(2.1375), Cell::Int(3)]);
        t.row(vec![
            Cell::text("b, c"),
            Cell::Num(f64::INFINITY),
            Cell::Empty,
        ]);
        t.row(vec![Cell::text("d"), Cell::Num(-0.001), Cell::Int(-1)]);
        t.note("done");
        t
    }

    #[test]
    fn plain_two_decimals() {
        let s = sample().plain();
        assert!(s.contains("2.14"));
        assert!(s.contains(" 0.00"));
        assert!(!s.contains("-0.00"));
        assert!(s.ends_with("done\n"));
    }

    #[test]
    fn csv_keeps_precision_and_quotes() {
        let s = sample().csv();
        assert!(s.contains("2.1375"));
        assert!(s.contains("\"b, c\",inf,"));
    }

    #[test]
    fn json_lines_round_trip() {
        let s = sample().json_lines();
        for line in s.lines() {
            let v: Value = serde_json::from_str(line).unwrap();
            assert_eq!(v.to_string(), line);
        }
        assert!(s.contains("\"value\":\"inf\""));
    }

    #[test]
    fn formats_parse() {
        assert_eq!(
            "structured-records".parse::<Format>().unwrap(),
            Format::JsonLines
        );
        assert!("xml".parse::<Format>().is_err());
    }
}
