use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::Context;
use serde_json::{json, Map, Value};

use crate::args::{Format, Params};

pub const OUT_DIR_ENV: &str = "PACSC_OUT_DIR";

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Float(f64),
    Int(u64),
    Bool(bool),
    Text(String),
    Empty,
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as u64)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Empty, Into::into)
    }
}

impl Cell {
    fn to_json(&self) -> Value {
        match self {
            Cell::Float(v) => json!(v),
            Cell::Int(v) => json!(v),
            Cell::Bool(v) => json!(v),
            Cell::Text(v) => json!(v),
            Cell::Empty => Value::Null,
        }
    }

    fn to_csv(&self) -> String {
        match self {
            Cell::Float(v) => fmt_sig(*v),
            Cell::Int(v) => v.to_string(),
            Cell::Bool(v) => v.to_string(),
            Cell::Text(v) => v.clone(),
            Cell::Empty => String::new(),
        }
    }
}

/// A command's result: scalar summary values plus an optional table.
#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    pub params: Params,
    pub summary: Vec<(String, Cell)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    /// Set when an invariant the command checks was broken.
    pub violation: bool,
}

impl Report {
    pub fn new(command: &str, params: &Params) -> Self {
        Self {
            command: command.to_string(),
            params: params.clone(),
            summary: Vec::new(),
            columns: Vec::new(),
            rows: Vec::new(),
            violation: false,
        }
    }

    pub fn put(&mut self, key: &str, value: impl Into<Cell>) {
        self.summary.push((key.to_string(), value.into()));
    }

    pub fn render(&self, format: Format) -> anyhow::Result<String> {
        match format {
            Format::Json => self.render_json(),
            Format::Csv => self.render_csv(),
        }
    }

    fn header(&self) -> anyhow::Result<(String, String)> {
        Ok((env!("CARGO_PKG_VERSION").to_string(), serde_json::to_string(&self.params)?))
    }

    fn render_json(&self) -> anyhow::Result<String> {
        let mut summary = Map::new();
        for (k, v) in &self.summary {
            summary.insert(k.clone(), v.to_json());
        }
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                let mut obj = Map::new();
                for (c, v) in self.columns.iter().zip(r) {
                    obj.insert(c.to_string(), v.to_json());
                }
                Value::Object(obj)
            })
            .collect();
        let doc = json!({
            "tool": "pacsc",
            "version": env!("CARGO_PKG_VERSION"),
            "command": self.command,
            "seed": self.params.seed(),
            "config": serde_json::to_value(&self.params)?,
            "summary": summary,
            "columns": self.columns,
            "rows": rows,
        });
        let mut s = serde_json::to_string_pretty(&doc)?;
        s.push('\n');
        Ok(s)
    }

    /// `#`-prefixed metadata lines, then a header and one line per row. A
    /// report without rows writes its summary as `quantity,value` rows.
    fn render_csv(&self) -> anyhow::Result<String> {
        let (version, config) = self.header()?;
        let mut out = String::new();
        out.push_str(&format!("# pacsc {version}\n"));
        out.push_str(&format!("# command: {}\n", self.command));
        out.push_str(&format!("# seed: {}\n", self.params.seed()));
        out.push_str(&format!("# config: {config}\n"));
        let mut w = csv::Writer::from_writer(Vec::new());
        if self.rows.is_empty() {
            w.write_record(["quantity", "value"])?;
            for (k, v) in &self.summary {
                w.write_record([k.as_str(), v.to_csv().as_str()])?;
            }
        } else {
            for (k, v) in &self.summary {
                out.push_str(&format!("# {k}: {}\n", v.to_csv()));
            }
            w.write_record(&self.columns)?;
            for r in &self.rows {
                w.write_record(r.iter().map(Cell::to_csv))?;
            }
        }
        out.push_str(std::str::from_utf8(&w.into_inner()?)?);
        Ok(out)
    }
}

/// `%.12g`: 12 significant digits, trailing zeros dropped, exponent form
/// outside `[1e-4, 1e12)`.
pub fn fmt_sig(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}"))
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs())
    }
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

/// Where output goes: `--out`, else `$PACSC_OUT_DIR/<command>-<seed>.<ext>`, else stdout.
pub fn destination(params: &Params, command: &str) -> Option<PathBuf> {
    if let Some(p) = &params.out {
        return Some(p.clone());
    }
    let dir = std::env::var_os(OUT_DIR_ENV).filter(|d| !d.is_empty())?;
    let ext = match params.format() {
        Format::Json => "json",
        Format::Csv => "csv",
    };
    Some(PathBuf::from(dir).join(format!("{command}-{}.{ext}", params.seed())))
}

/// Writes through a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, contents: &str) -> anyhow::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
        _ => PathBuf::from("."),
    };
    std::fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut tmp = tempfile::NamedTempFile::new_in(&dir).with_context(|| format!("temp file in {}", dir.display()))?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}
