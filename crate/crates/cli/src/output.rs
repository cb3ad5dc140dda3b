use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Serialize;

use crate::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl OutputFormat {
    pub fn extension(&self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        }
    }
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!(
                "unknown output format {other:?}; expected csv or json"
            )),
        }
    }
}

/// Columns of equal length: one x column followed by `value`, `value2`, …
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    pub x_name: String,
    pub x: Vec<f64>,
    pub columns: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(x_name: &str, x: Vec<f64>, columns: Vec<Vec<f64>>) -> Self {
        assert!(columns.iter().all(|c| c.len() == x.len()));
        Self {
            x_name: x_name.to_string(),
            x,
            columns,
        }
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn column(&self, k: usize) -> &[f64] {
        &self.columns[k]
    }

    fn value_names(&self) -> Vec<String> {
        (0..self.columns.len())
            .map(|k| {
                if k == 0 {
                    "value".to_string()
                } else {
                    format!("value{}", k + 1)
                }
            })
            .collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.x_name);
        for name in self.value_names() {
            out.push(',');
            out.push_str(&name);
        }
        out.push('\n');
        for (i, x) in self.x.iter().enumerate() {
            out.push_str(&format_float(*x));
            for c in &self.columns {
                let _ = write!(out, ",{}", format_float(c[i]));
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut map = serde_json::Map::new();
        map.insert(self.x_name.clone(), serde_json::json!(self.x));
        for (name, c) in self.value_names().into_iter().zip(&self.columns) {
            map.insert(name, serde_json::json!(c));
        }
        let mut s = serde_json::to_string_pretty(&serde_json::Value::Object(map)).unwrap();
        s.push('\n');
        s
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => self.to_json(),
        }
    }

    /// Parses the CSV written by [`Table::to_csv`].
    pub fn from_csv(text: &str) -> Option<Self> {
        let mut lines = text.lines();
        let header: Vec<&str> = lines.next()?.split(',').collect();
        let ncols = header.len().checked_sub(1)?;
        let mut x = Vec::new();
        let mut columns = vec![Vec::new(); ncols];
        for line in lines {
            let fields: Vec<f64> = line
                .split(',')
                .map(|f| f.parse().ok())
                .collect::<Option<_>>()?;
            if fields.len() != ncols + 1 {
                return None;
            }
            x.push(fields[0]);
            for (c, v) in columns.iter_mut().zip(&fields[1..]) {
                c.push(*v);
            }
        }
        Some(Self::new(header[0], x, columns))
    }
}

/// Twelve significant digits in scientific notation.
pub fn format_float(v: f64) -> String {
    if v == 0.0 {
        // Avoids "-0.00000000000e0".
        return format!("{:.11e}", 0.0);
    }
    format!("{v:.11e}")
}

/// Writes `contents` to `dir/name` through a temporary file in the same
/// directory and a rename.
pub fn write_atomic(dir: &Path, name: &str, contents: &str) -> Result<PathBuf> {
    let io = |path: &Path| {
        let path = path.to_path_buf();
        move |source| CliError::Io { path, source }
    };
    std::fs::create_dir_all(dir).map_err(io(dir))?;
    let path = dir.join(name);
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io(&path))?;
    tmp.write_all(contents.as_bytes()).map_err(io(&path))?;
    tmp.persist(&path).map_err(|e| CliError::Io {
        path: path.clone(),
        source: e.error,
    })?;
    Ok(path)
}

pub fn to_json_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}
