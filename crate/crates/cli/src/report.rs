use std::fmt;
use std::time::Instant;

use serde_json::{Map, Value};

use crate::{Format, Global};

#[derive(Debug)]
pub enum Failure {
    /// Bad flags, expressions or ideal names. Exit status 1.
    Usage(String),
    /// A check disagreed with its expected value. Exit status 2.
    Mismatch(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Mismatch(_) => 2,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) => write!(f, "{}", m),
            Failure::Mismatch(m) => write!(f, "verification mismatch: {}", m),
        }
    }
}

impl From<lcs::Error> for Failure {
    fn from(e: lcs::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

/// A finished report: JSON fields, an optional CSV body and a one-line
/// summary for the terminal.
pub struct Report {
    pub fields: Map<String, Value>,
    pub csv: Option<String>,
    pub summary: String,
}

impl Report {
    pub fn new(summary: impl Into<String>) -> Self {
        Report { fields: Map::new(), csv: None, summary: summary.into() }
    }

    pub fn set(mut self, key: &str, v: impl Into<Value>) -> Self {
        self.fields.insert(key.to_string(), v.into());
        self
    }

    pub fn csv(mut self, body: String) -> Self {
        self.csv = Some(body);
        self
    }
}

/// Adds the common fields and writes the report. `serde_json`'s map is
/// ordered by key, so the JSON output is canonical.
pub fn emit(
    command: &str,
    n: Option<usize>,
    cutoff: Option<usize>,
    mut report: Report,
    start: Instant,
    g: &Global,
) -> Result<(), Failure> {
    let ms = if g.no_timing { 0 } else { start.elapsed().as_millis() as u64 };
    let f = &mut report.fields;
    f.insert("command".into(), command.into());
    f.insert("version".into(), env!("CARGO_PKG_VERSION").into());
    f.insert("wall_clock_ms".into(), ms.into());
    f.entry("n").or_insert_with(|| n.into());
    f.entry("cutoff").or_insert_with(|| cutoff.into());

    let body = match g.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&Value::Object(report.fields)).expect("JSON values serialize");
            s.push('\n');
            s
        }
        Format::Csv => report
            .csv
            .ok_or_else(|| Failure::Usage(format!("`{}` has no CSV form; use --format json", command)))?,
    };
    match &g.out {
        Some(path) => {
            std::fs::write(path, body).map_err(|e| Failure::Usage(format!("cannot write {}: {}", path.display(), e)))?;
            println!("{}", report.summary);
        }
        None => print!("{}", body),
    }
    Ok(())
}
