//! CSV, JSON and aligned-table rendering with a provenance header.

use serde::Serialize;
use serde_json::Value;

use crate::args::Format;
use crate::grid::fmt_f64;
use crate::CliError;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    F(f64),
    /// Empty in CSV and tables, null in JSON.
    Missing,
    I(i64),
    B(bool),
    S(String),
}

impl Cell {
    fn text(&self) -> String {
        match self {
            Cell::F(x) => fmt_f64(*x),
            Cell::Missing => String::new(),
            Cell::I(i) => i.to_string(),
            Cell::B(b) => b.to_string(),
            Cell::S(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::F(x) => Value::from(*x),
            Cell::Missing => Value::Null,
            Cell::I(i) => Value::from(*i),
            Cell::B(b) => Value::from(*b),
            Cell::S(s) => Value::from(s.as_str()),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::F(x)
    }
}

impl From<Option<f64>> for Cell {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Cell::Missing, Cell::F)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::B(b)
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::S(s)
    }
}

#[derive(Debug, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

pub enum Document {
    Table(Table),
    /// A structured report, rendered as JSON or as a flattened key/value table.
    Report(Value),
}

pub struct Header {
    pub args: Vec<String>,
    pub constants: &'static str,
    pub units: &'static str,
    pub notes: Vec<String>,
}

impl Header {
    fn lines(&self) -> Vec<String> {
        let mut v = vec![
            format!("ionring {}", ionring::VERSION),
            format!("constants: {}", self.constants),
            format!("args: {}", self.args.join(" ")),
            format!("units: {}", self.units),
        ];
        v.extend(self.notes.iter().cloned());
        v
    }
}

#[derive(Serialize)]
struct JsonTable<'a> {
    generator: String,
    constants: &'a str,
    args: String,
    units: &'a str,
    notes: &'a [String],
    columns: &'a [String],
    rows: Vec<Vec<Value>>,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    generator: String,
    constants: &'a str,
    args: String,
    units: &'a str,
    notes: &'a [String],
    report: &'a Value,
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                flatten(&key(k), x, out);
            }
        }
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                flatten(&key(&i.to_string()), x, out);
            }
        }
        Value::Null => out.push((prefix.to_string(), "-".into())),
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

fn aligned(header: &Header, columns: &[String], rows: &[Vec<String>]) -> String {
    let mut width: Vec<usize> = columns.iter().map(|c| c.chars().count()).collect();
    for r in rows {
        for (w, c) in width.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let mut s = String::new();
    for l in header.lines() {
        s.push_str(&format!("# {l}\n"));
    }
    let line = |cells: &[String]| {
        cells
            .iter()
            .zip(&width)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    s.push_str(&line(columns));
    s.push('\n');
    for r in rows {
        s.push_str(&line(r));
        s.push('\n');
    }
    s
}

pub fn render(doc: &Document, header: &Header, format: Format) -> Result<String, CliError> {
    let generator = format!("ionring {}", ionring::VERSION);
    match (doc, format) {
        (Document::Table(t), Format::Csv) => {
            let mut s = String::new();
            for l in header.lines() {
                s.push_str(&format!("# {l}\n"));
            }
            s.push_str(&t.columns.join(","));
            s.push('\n');
            for r in &t.rows {
                s.push_str(&r.iter().map(Cell::text).collect::<Vec<_>>().join(","));
                s.push('\n');
            }
            Ok(s)
        }
        (Document::Table(t), Format::Json) => {
            let doc = JsonTable {
                generator,
                constants: header.constants,
                args: header.args.join(" "),
                units: header.units,
                notes: &header.notes,
                columns: &t.columns,
                rows: t.rows.iter().map(|r| r.iter().map(Cell::json).collect()).collect(),
            };
            Ok(serde_json::to_string_pretty(&doc).expect("plain data serializes") + "\n")
        }
        (Document::Table(t), Format::Table) => {
            let rows: Vec<Vec<String>> = t.rows.iter().map(|r| r.iter().map(Cell::text).collect()).collect();
            Ok(aligned(header, &t.columns, &rows))
        }
        (Document::Report(v), Format::Json) => {
            let doc = JsonReport {
                generator,
                constants: header.constants,
                args: header.args.join(" "),
                units: header.units,
                notes: &header.notes,
                report: v,
            };
            Ok(serde_json::to_string_pretty(&doc).expect("plain data serializes") + "\n")
        }
        (Document::Report(v), Format::Table) => {
            let mut pairs = Vec::new();
            flatten("", v, &mut pairs);
            let rows: Vec<Vec<String>> = pairs.into_iter().map(|(k, v)| vec![k, v]).collect();
            let mut s = String::new();
            for l in header.lines() {
                s.push_str(&format!("# {l}\n"));
            }
            let kw = rows.iter().map(|r| r[0].chars().count()).max().unwrap_or(0);
            for r in rows {
                s.push_str(&format!("{:<kw$}  {}\n", r[0], r[1]));
            }
            Ok(s)
        }
        (Document::Report(_), Format::Csv) => Err(CliError::Usage("this command writes json or table output, not csv".into())),
    }
}
