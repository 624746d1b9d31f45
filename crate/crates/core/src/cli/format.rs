//! Table rendering for the CLI: CSV, gnuplot data blocks and JSON arrays.

use std::fmt::Write as _;

use clap::ValueEnum;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
    Gnuplot,
}

impl OutputFormat {
    pub fn extension(self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
            OutputFormat::Gnuplot => "dat",
        }
    }
}

/// C's `%.17g`: 17 significant digits, trailing zeros dropped.
pub fn format_g17(x: f64) -> String {
    const PRECISION: i32 = 17;
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", (PRECISION - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..PRECISION).contains(&exp) {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs())
    } else {
        trim_zeros(&format!("{:.*}", (PRECISION - 1 - exp) as usize, x)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
    Empty,
}

impl Cell {
    fn plain(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format_g17(*v),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) if v.is_finite() => format_g17(*v),
            Cell::Text(s) => serde_json::Value::from(s.as_str()).to_string(),
            Cell::Float(_) | Cell::Empty => "null".into(),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Empty, Cell::Float)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Self {
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: OutputFormat) -> String {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| render_row(&self.columns, r, format))
            .collect();
        let mut out = String::new();
        match format {
            OutputFormat::Csv => {
                out.push_str(&self.columns.join(","));
                out.push('\n');
            }
            OutputFormat::Gnuplot => {
                let _ = writeln!(out, "# {}", self.columns.join(" "));
            }
            OutputFormat::Json => {
                out.push_str("[\n");
                out.push_str(&rows.join(",\n"));
                out.push_str(if rows.is_empty() { "]\n" } else { "\n]\n" });
                return out;
            }
        }
        for r in rows {
            out.push_str(&r);
            out.push('\n');
        }
        out
    }
}

/// One row in `format`, without the trailing newline or JSON separator.
pub fn render_row(columns: &[&'static str], row: &[Cell], format: OutputFormat) -> String {
    match format {
        OutputFormat::Csv => row.iter().map(Cell::plain).collect::<Vec<_>>().join(","),
        OutputFormat::Gnuplot => row
            .iter()
            .map(|c| match c {
                Cell::Empty => "NaN".to_string(),
                c => c.plain(),
            })
            .collect::<Vec<_>>()
            .join(" "),
        OutputFormat::Json => {
            let fields: Vec<String> = columns
                .iter()
                .zip(row)
                .map(|(k, v)| format!("\"{k}\":{}", v.json()))
                .collect();
            format!("{{{}}}", fields.join(","))
        }
    }
}
