use std::collections::BTreeMap;
use std::fmt::Write as _;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Json,
    Csv,
}

/// Result of one invocation. Scalar commands fill `exact` and `float`;
/// list-valued commands (`sequence`, `verify`) leave them empty and put
/// their payload in `extras`.
#[derive(Debug, Serialize)]
pub struct OutputRecord {
    pub command: &'static str,
    pub inputs: BTreeMap<&'static str, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub float: Option<String>,
    pub oracle_devs: BTreeMap<&'static str, f64>,
    #[serde(flatten)]
    pub extras: BTreeMap<&'static str, Value>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub passed: bool,
}

impl OutputRecord {
    pub fn new(command: &'static str) -> Self {
        Self {
            command,
            inputs: BTreeMap::new(),
            exact: None,
            float: None,
            oracle_devs: BTreeMap::new(),
            extras: BTreeMap::new(),
            notes: Vec::new(),
            passed: true,
        }
    }

    pub fn input(mut self, key: &'static str, value: impl Into<Value>) -> Self {
        self.inputs.insert(key, value.into());
        self
    }

    pub fn extra(&mut self, key: &'static str, value: impl Into<Value>) {
        self.extras.insert(key, value.into());
    }

    /// Records an oracle deviation and folds it into `passed`.
    pub fn oracle(&mut self, name: &'static str, dev: f64, tolerance: f64) {
        self.passed &= dev <= tolerance;
        self.oracle_devs.insert(name, dev);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("record serializes");
                s.push('\n');
                s
            }
            Format::Plain => self.plain(),
            Format::Csv => self.csv(),
        }
    }

    fn plain(&self) -> String {
        let mut out = String::new();
        let inputs: Vec<String> = self
            .inputs
            .iter()
            .map(|(k, v)| format!("{k}={}", scalar(v)))
            .collect();
        let _ = writeln!(out, "{} {}", self.command, inputs.join(" "));
        if let Some(exact) = &self.exact {
            let _ = writeln!(out, "exact: {exact}");
        }
        if let Some(float) = &self.float {
            let _ = writeln!(out, "float: {float}");
        }
        for (name, dev) in &self.oracle_devs {
            let _ = writeln!(out, "oracle {name}: {}", float_string(*dev));
        }
        for (key, value) in &self.extras {
            match value {
                Value::Array(items) if items.iter().all(|v| v.is_object()) => {
                    let _ = writeln!(out, "{key}:");
                    out.push_str(&aligned_table(items));
                }
                Value::Array(items) => {
                    let joined: Vec<String> = items.iter().map(scalar).collect();
                    let _ = writeln!(out, "{key}: {}", joined.join(","));
                }
                v => {
                    let _ = writeln!(out, "{key}: {}", scalar(v));
                }
            }
        }
        for note in &self.notes {
            let _ = writeln!(out, "note: {note}");
        }
        let _ = writeln!(out, "status: {}", if self.passed { "pass" } else { "fail" });
        out
    }

    /// A table-shaped extra (array of objects or scalars) becomes the CSV
    /// body; otherwise one header row and one value row.
    fn csv(&self) -> String {
        let table = self.extras.values().find_map(|v| match v {
            Value::Array(items) => Some(items),
            _ => None,
        });
        if let Some(items) = table {
            return csv_table(items);
        }
        let mut header = vec!["command".to_string()];
        let mut row = vec![self.command.to_string()];
        for (k, v) in &self.inputs {
            header.push(k.to_string());
            row.push(scalar(v));
        }
        header.extend(["exact".into(), "float".into()]);
        row.push(self.exact.clone().unwrap_or_default());
        row.push(self.float.clone().unwrap_or_default());
        for (name, dev) in &self.oracle_devs {
            header.push(format!("dev_{name}"));
            row.push(float_string(*dev));
        }
        for (k, v) in &self.extras {
            header.push(k.to_string());
            row.push(scalar(v));
        }
        header.push("status".into());
        row.push(if self.passed { "pass" } else { "fail" }.into());
        format!("{}\n{}\n", csv_line(&header), csv_line(&row))
    }
}

fn csv_table(items: &[Value]) -> String {
    let mut out = String::new();
    match items.first() {
        Some(Value::Object(first)) => {
            let keys: Vec<&String> = first.keys().collect();
            let header: Vec<String> = keys.iter().map(|k| k.to_string()).collect();
            out.push_str(&csv_line(&header));
            out.push('\n');
            for item in items {
                let row: Vec<String> = keys
                    .iter()
                    .map(|k| item.get(k.as_str()).map(scalar).unwrap_or_default())
                    .collect();
                out.push_str(&csv_line(&row));
                out.push('\n');
            }
        }
        _ => {
            out.push_str("index,value\n");
            for (i, item) in items.iter().enumerate() {
                let _ = writeln!(out, "{i},{}", scalar(item));
            }
        }
    }
    out
}

fn csv_line(fields: &[String]) -> String {
    fields
        .iter()
        .map(|f| {
            if f.contains([',', '"', '\n']) {
                format!("\"{}\"", f.replace('"', "\"\""))
            } else {
                f.clone()
            }
        })
        .collect::<Vec<_>>()
        .join(",")
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// Space-aligned table with the object keys as the header row.
fn aligned_table(items: &[Value]) -> String {
    let keys: Vec<String> = match items.first() {
        Some(Value::Object(first)) => first.keys().cloned().collect(),
        _ => return String::new(),
    };
    let rows: Vec<Vec<String>> = items
        .iter()
        .map(|item| {
            keys.iter()
                .map(|k| item.get(k).map(scalar).unwrap_or_default())
                .collect()
        })
        .collect();
    let widths: Vec<usize> = (0..keys.len())
        .map(|i| {
            rows.iter()
                .map(|r| r[i].chars().count())
                .chain([keys[i].len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let line = |cells: &[String]| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        format!("  {}\n", padded.join("  ").trim_end())
    };
    let mut out = line(&keys);
    for r in &rows {
        out.push_str(&line(r));
    }
    out
}

/// Seventeen significant digits in scientific notation, which parses back
/// to the same double.
pub fn float_string(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}
