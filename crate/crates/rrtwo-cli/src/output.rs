//! Output rendering shared by all subcommands.
//!
//! Three formats are supported. `table` prints aligned `name = value`
//! lines for reading at a terminal. `csv` prints a header row of field
//! names followed by one row per record. `records` prints one JSON object
//! per line with the same field names, in field order; consumers can rely
//! on names and order staying stable.

use clap::ValueEnum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatKind {
    Table,
    Csv,
    Records,
}

impl FormatKind {
    pub fn parse_name(name: &str) -> Option<Self> {
        match name {
            "table" => Some(FormatKind::Table),
            "csv" => Some(FormatKind::Csv),
            "records" => Some(FormatKind::Records),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Float(f64),
    Int(u64),
    Bool(bool),
    Text(String),
    /// A component the model does not estimate.
    Missing,
}

#[derive(Debug, Clone, Default)]
pub struct Record {
    fields: Vec<(&'static str, Value)>,
}

impl Record {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(mut self, name: &'static str, value: Value) -> Self {
        self.fields.push((name, value));
        self
    }

    pub fn float(self, name: &'static str, value: f64) -> Self {
        self.push(name, Value::Float(value))
    }

    pub fn opt_float(self, name: &'static str, value: Option<f64>) -> Self {
        match value {
            Some(v) => self.push(name, Value::Float(v)),
            None => self.push(name, Value::Missing),
        }
    }

    pub fn int(self, name: &'static str, value: u64) -> Self {
        self.push(name, Value::Int(value))
    }

    pub fn bool(self, name: &'static str, value: bool) -> Self {
        self.push(name, Value::Bool(value))
    }

    pub fn text(self, name: &'static str, value: impl Into<String>) -> Self {
        self.push(name, Value::Text(value.into()))
    }
}

/// Locale-independent decimal rendering with a `.` separator; `Display`
/// for `f64` never emits scientific notation.
pub fn fmt_float(value: f64) -> String {
    format!("{value}")
}

/// Rounds half away from zero at `decimals` places and renders exactly
/// that many digits, via integer arithmetic so no second rounding occurs.
pub fn format_rounded(value: f64, decimals: u32) -> String {
    let scale = 10i64.pow(decimals);
    let scaled = (value * scale as f64).round() as i64;
    let int = scaled / scale;
    let frac = (scaled % scale).abs();
    if decimals == 0 {
        format!("{int}")
    } else {
        format!("{int}.{frac:0width$}", width = decimals as usize)
    }
}

fn json_escape(text: &str) -> String {
    text.replace('\\', "\\\\").replace('"', "\\\"")
}

fn render_value_json(value: &Value) -> String {
    match value {
        Value::Float(v) => fmt_float(*v),
        Value::Int(v) => format!("{v}"),
        Value::Bool(v) => format!("{v}"),
        Value::Text(t) => format!("\"{}\"", json_escape(t)),
        Value::Missing => "null".into(),
    }
}

fn render_value_plain(value: &Value, missing: &str) -> String {
    match value {
        Value::Float(v) => fmt_float(*v),
        Value::Int(v) => format!("{v}"),
        Value::Bool(v) => format!("{v}"),
        Value::Text(t) => t.clone(),
        Value::Missing => missing.into(),
    }
}

pub fn render(records: &[Record], format: FormatKind) -> String {
    match format {
        FormatKind::Records => {
            let mut out = String::new();
            for record in records {
                let body: Vec<String> = record
                    .fields
                    .iter()
                    .map(|(name, value)| format!("\"{name}\":{}", render_value_json(value)))
                    .collect();
                out.push('{');
                out.push_str(&body.join(","));
                out.push_str("}\n");
            }
            out
        }
        FormatKind::Csv => {
            let mut out = String::new();
            if let Some(first) = records.first() {
                let header: Vec<&str> = first.fields.iter().map(|(name, _)| *name).collect();
                out.push_str(&header.join(","));
                out.push('\n');
            }
            for record in records {
                let row: Vec<String> = record
                    .fields
                    .iter()
                    .map(|(_, value)| render_value_plain(value, ""))
                    .collect();
                out.push_str(&row.join(","));
                out.push('\n');
            }
            out
        }
        FormatKind::Table => {
            let mut out = String::new();
            for (i, record) in records.iter().enumerate() {
                if i > 0 {
                    out.push('\n');
                }
                let width = record
                    .fields
                    .iter()
                    .map(|(name, _)| name.len())
                    .max()
                    .unwrap_or(0);
                for (name, value) in &record.fields {
                    out.push_str(&format!(
                        "{name:width$}  {}\n",
                        render_value_plain(value, "-")
                    ));
                }
            }
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Record {
        Record::new()
            .text("model", "proposed")
            .int("n", 1000)
            .float("pi_a", 0.3)
            .bool("clamped", false)
            .push("pi_b", Value::Missing)
    }

    #[test]
    fn records_format_is_json_lines() {
        let out = render(&[sample()], FormatKind::Records);
        assert_eq!(
            out,
            "{\"model\":\"proposed\",\"n\":1000,\"pi_a\":0.3,\"clamped\":false,\"pi_b\":null}\n"
        );
    }

    #[test]
    fn csv_format_has_header_and_empty_missing() {
        let out = render(&[sample()], FormatKind::Csv);
        assert_eq!(out, "model,n,pi_a,clamped,pi_b\nproposed,1000,0.3,false,\n");
    }

    #[test]
    fn table_format_renders_missing_as_dash() {
        let out = render(&[sample()], FormatKind::Table);
        assert!(out.contains("pi_b     -"));
        assert!(out.contains("model    proposed"));
    }

    #[test]
    fn rounding_is_half_up_at_fixed_width() {
        assert_eq!(format_rounded(25.0747, 2), "25.07");
        assert_eq!(format_rounded(21.5054, 2), "21.51");
        assert_eq!(format_rounded(5.0325, 1), "5.0");
        assert_eq!(format_rounded(3.5190, 1), "3.5");
        assert_eq!(format_rounded(7.0, 1), "7.0");
        assert_eq!(format_rounded(2.0, 0), "2");
    }

    #[test]
    fn floats_render_without_scientific_notation() {
        assert_eq!(fmt_float(0.0000069), "0.0000069");
        assert_eq!(fmt_float(0.1), "0.1");
    }
}
