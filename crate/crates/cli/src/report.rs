//! Run reports: an ordered list of fields and tables rendered either as a
//! line-oriented text document or as JSON. Both renderings come from the same
//! data so they cannot drift apart.

use serde_json::{Map, Value};

pub const REPORT_VERSION: u64 = 1;

#[derive(Debug, Clone, PartialEq)]
pub enum Field {
    Str(String),
    Int(i64),
    Float(f64),
    Bool(bool),
}

impl Field {
    fn text(&self) -> String {
        match self {
            Field::Str(s) => s.clone(),
            Field::Int(i) => i.to_string(),
            Field::Float(x) => format_float(*x),
            Field::Bool(b) => b.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Field::Str(s) => Value::from(s.as_str()),
            Field::Int(i) => Value::from(*i),
            Field::Float(x) => serde_json::Number::from_f64(*x).map_or_else(|| Value::from(format_float(*x)), Value::Number),
            Field::Bool(b) => Value::from(*b),
        }
    }
}

impl From<&str> for Field {
    fn from(s: &str) -> Self {
        Field::Str(s.to_owned())
    }
}

impl From<String> for Field {
    fn from(s: String) -> Self {
        Field::Str(s)
    }
}

impl From<f64> for Field {
    fn from(x: f64) -> Self {
        Field::Float(x)
    }
}

impl From<usize> for Field {
    fn from(i: usize) -> Self {
        Field::Int(i as i64)
    }
}

impl From<u64> for Field {
    fn from(i: u64) -> Self {
        Field::Str(i.to_string())
    }
}

impl From<bool> for Field {
    fn from(b: bool) -> Self {
        Field::Bool(b)
    }
}

/// Shortest round-trip scientific notation.
pub fn format_float(x: f64) -> String {
    format!("{x:e}")
}

#[derive(Debug, Clone, PartialEq, Eq, Copy)]
pub enum Outcome {
    Pass,
    Fail,
    Error,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::Error => "error",
        }
    }

    /// 0 = pass, 1 = a check failed or the input is degenerate, 2 = I/O or
    /// usage error.
    pub fn exit_code(self) -> u8 {
        match self {
            Outcome::Pass => 0,
            Outcome::Fail => 1,
            Outcome::Error => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: &'static str,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Field>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub command: &'static str,
    pub input: Vec<(&'static str, Field)>,
    pub tolerances: Vec<(&'static str, f64)>,
    pub outcome: Outcome,
    /// `(kind, message)` when the run stopped on an error.
    pub error: Option<(String, String)>,
    pub fields: Vec<(String, Field)>,
    pub tables: Vec<Table>,
}

impl RunReport {
    pub fn new(command: &'static str) -> Self {
        RunReport {
            command,
            input: Vec::new(),
            tolerances: Vec::new(),
            outcome: Outcome::Pass,
            error: None,
            fields: Vec::new(),
            tables: Vec::new(),
        }
    }

    pub fn input(&mut self, key: &'static str, value: impl Into<Field>) -> &mut Self {
        self.input.push((key, value.into()));
        self
    }

    pub fn tolerance(&mut self, key: &'static str, value: f64) -> &mut Self {
        self.tolerances.push((key, value));
        self
    }

    pub fn field(&mut self, key: impl Into<String>, value: impl Into<Field>) -> &mut Self {
        self.fields.push((key.into(), value.into()));
        self
    }

    pub fn table(&mut self, table: Table) -> &mut Self {
        self.tables.push(table);
        self
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut line = |k: &str, v: String| {
            out.push_str(k);
            out.push_str(": ");
            out.push_str(&v);
            out.push('\n');
        };
        line("report_version", REPORT_VERSION.to_string());
        line("tool_version", env!("CARGO_PKG_VERSION").to_string());
        line("command", self.command.to_string());
        for (k, v) in &self.input {
            line(&format!("input.{k}"), v.text());
        }
        for (k, v) in &self.tolerances {
            line(&format!("tolerance.{k}"), format_float(*v));
        }
        line("outcome", self.outcome.as_str().to_string());
        if let Some((kind, message)) = &self.error {
            line("error.kind", kind.clone());
            line("error.message", message.clone());
        }
        for (k, v) in &self.fields {
            line(k, v.text());
        }
        for t in &self.tables {
            out.push_str(&format!("\n[{}]\n", t.name));
            out.push_str(&t.columns.join(" "));
            out.push('\n');
            for row in &t.rows {
                let cells: Vec<String> = row.iter().map(Field::text).collect();
                out.push_str(&cells.join(" "));
                out.push('\n');
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let mut root = Map::new();
        root.insert("report_version".into(), Value::from(REPORT_VERSION));
        root.insert("tool_version".into(), Value::from(env!("CARGO_PKG_VERSION")));
        root.insert("command".into(), Value::from(self.command));
        root.insert("input".into(), Value::Object(self.input.iter().map(|(k, v)| (k.to_string(), v.json())).collect()));
        root.insert(
            "tolerances".into(),
            Value::Object(self.tolerances.iter().map(|(k, v)| (k.to_string(), Field::Float(*v).json())).collect()),
        );
        root.insert("outcome".into(), Value::from(self.outcome.as_str()));
        if let Some((kind, message)) = &self.error {
            let mut err = Map::new();
            err.insert("kind".into(), Value::from(kind.as_str()));
            err.insert("message".into(), Value::from(message.as_str()));
            root.insert("error".into(), Value::Object(err));
        }
        root.insert("result".into(), Value::Object(self.fields.iter().map(|(k, v)| (k.clone(), v.json())).collect()));
        let tables = self
            .tables
            .iter()
            .map(|t| {
                let rows = t
                    .rows
                    .iter()
                    .map(|row| {
                        Value::Object(t.columns.iter().zip(row).map(|(c, v)| (c.clone(), v.json())).collect())
                    })
                    .collect();
                (t.name.to_string(), Value::Array(rows))
            })
            .collect();
        root.insert("tables".into(), Value::Object(tables));
        Value::Object(root)
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            let mut s = serde_json::to_string_pretty(&self.to_json()).expect("report serializes");
            s.push('\n');
            s
        } else {
            self.to_text()
        }
    }
}
