//! Output documents: a provenance line followed by CSV rows or
//! newline-delimited JSON records, written atomically.

use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// Everything that determines a command's output. The thread count and the
/// output path are deliberately absent.
#[derive(Clone, Debug, Serialize)]
pub struct ExperimentConfig {
    pub command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub modulus: Option<String>,
    #[serde(flatten)]
    pub options: serde_json::Map<String, Value>,
    pub format: Format,
}

/// A document under construction.
pub struct Doc {
    format: Format,
    lines: Vec<String>,
}

impl Doc {
    pub fn new(config: &ExperimentConfig) -> Doc {
        let cfg = serde_json::to_string(config).expect("config serializes");
        let head = match config.format {
            Format::Csv => format!("# amcodes {VERSION} {cfg}"),
            Format::Json => format!("{{\"provenance\":{{\"tool\":\"amcodes\",\"version\":\"{VERSION}\",\"config\":{cfg}}}}}"),
        };
        Doc { format: config.format, lines: vec![head] }
    }

    pub fn format(&self) -> Format {
        self.format
    }

    /// A CSV line.
    pub fn csv<I, S>(&mut self, fields: I)
    where
        I: IntoIterator<Item = S>,
        S: ToString,
    {
        let row: Vec<String> = fields.into_iter().map(|f| f.to_string()).collect();
        self.lines.push(row.join(","));
    }

    /// A JSON record.
    pub fn record(&mut self, value: Value) {
        self.lines.push(value.to_string());
    }

    /// A table row rendered per format: CSV values, or a JSON object keyed
    /// by `header`.
    pub fn row(&mut self, header: &[&str], values: Vec<Value>) {
        match self.format {
            Format::Csv => self.csv(values.iter().map(csv_value)),
            Format::Json => {
                let obj = header.iter().map(|h| h.to_string()).zip(values).collect();
                self.record(Value::Object(obj));
            }
        }
    }

    /// A CSV header line (no-op for JSON).
    pub fn header(&mut self, header: &[&str]) {
        if self.format == Format::Csv {
            self.csv(header.iter());
        }
    }

    /// A free-form line: `# text` in CSV, `{"note": text}` in JSON.
    pub fn note(&mut self, text: &str) {
        match self.format {
            Format::Csv => self.lines.push(format!("# {text}")),
            Format::Json => self.record(serde_json::json!({ "note": text })),
        }
    }

    pub fn render(&self) -> String {
        let mut s = self.lines.join("\n");
        s.push('\n');
        s
    }
}

fn csv_value(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
        Value::String(s) => s.clone(),
        Value::Array(a) => a.iter().map(csv_value).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}

/// Writes `contents` to `path` through a temporary file in the same
/// directory and a rename.
pub fn write_atomic(path: &Path, contents: &[u8]) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

/// An `f64` rounded to six decimals.
pub fn fixed(x: f64) -> Value {
    serde_json::Number::from_f64((x * 1e6).round() / 1e6).map_or(Value::Null, Value::Number)
}
