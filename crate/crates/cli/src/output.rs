//! Rendering of command output as CSV or JSON.
//!
//! Both encodings carry the same values: reals are emitted with 17
//! significant digits (`{:.16e}`), which round-trips every finite double
//! through text. CSV is header + rows with LF line endings and `.` as the
//! decimal point; JSON is a single object `{"command", "params", "rows"}`.
//! Field order is fixed per command, so identical invocations produce
//! byte-identical output.

use std::fmt::Write as _;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone)]
pub enum Field {
    Real(f64),
    UInt(u64),
    Bool(bool),
    Str(String),
}

impl From<f64> for Field {
    fn from(x: f64) -> Self {
        Field::Real(x)
    }
}

impl From<u64> for Field {
    fn from(x: u64) -> Self {
        Field::UInt(x)
    }
}

impl From<bool> for Field {
    fn from(x: bool) -> Self {
        Field::Bool(x)
    }
}

impl From<&str> for Field {
    fn from(x: &str) -> Self {
        Field::Str(x.to_owned())
    }
}

/// The rendered payload of one command invocation.
#[derive(Debug, Clone)]
pub struct Output {
    pub command: &'static str,
    pub params: Vec<(&'static str, Field)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Field>>,
}

/// 17 significant digits; non-finite values spelled out.
pub fn fmt_real(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "nan".into()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

fn csv_field(f: &Field) -> String {
    match f {
        Field::Real(x) => fmt_real(*x),
        Field::UInt(x) => x.to_string(),
        Field::Bool(x) => x.to_string(),
        Field::Str(s) => s.clone(),
    }
}

fn json_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out
}

fn json_field(f: &Field) -> String {
    match f {
        // non-finite reals only occur in error records; JSON has no literal
        // for them
        Field::Real(x) if x.is_finite() => fmt_real(*x),
        Field::Real(_) => "null".into(),
        Field::UInt(x) => x.to_string(),
        Field::Bool(x) => x.to_string(),
        Field::Str(s) => format!("\"{}\"", json_escape(s)),
    }
}

impl Output {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.render_csv(),
            Format::Json => self.render_json(),
        }
    }

    fn render_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(csv_field).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    fn render_json(&self) -> String {
        let mut out = String::new();
        let _ = write!(out, "{{\"command\":\"{}\",\"params\":{{", self.command);
        for (i, (name, field)) in self.params.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            let _ = write!(out, "\"{}\":{}", json_escape(name), json_field(field));
        }
        out.push_str("},\"rows\":[");
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push('{');
            for (k, (name, field)) in self.columns.iter().zip(row).enumerate() {
                if k > 0 {
                    out.push(',');
                }
                let _ = write!(out, "\"{}\":{}", json_escape(name), json_field(field));
            }
            out.push('}');
        }
        out.push_str("]}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn real_formatting_round_trips() {
        for &x in &[1.0, 0.5, 1.624_838_898_635_177_5, 1e-300, -3.2e17] {
            assert_eq!(fmt_real(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(fmt_real(f64::NAN), "nan");
        assert_eq!(fmt_real(f64::INFINITY), "inf");
        assert_eq!(fmt_real(f64::NEG_INFINITY), "-inf");
    }

    #[test]
    fn csv_and_json_shapes() {
        let out = Output {
            command: "demo",
            params: vec![("alpha", Field::Real(0.5)), ("flag", Field::Bool(true))],
            columns: vec!["x", "ok"],
            rows: vec![vec![Field::Real(1.0), Field::Bool(false)]],
        };
        let csv = out.render(Format::Csv);
        assert_eq!(csv, "x,ok\n1.0000000000000000e0,false\n");
        let json = out.render(Format::Json);
        assert!(json.starts_with("{\"command\":\"demo\""));
        assert!(json.ends_with("]}\n"));
        assert!(json.contains("\"alpha\":5.0000000000000000e-1"));
    }
}
