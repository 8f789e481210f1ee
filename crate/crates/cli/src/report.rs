use std::fmt::Write as _;
use std::process::ExitCode;

use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Violation,
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Violation => "violation",
            Status::Error => "error",
        }
    }

    pub fn exit_code(self) -> ExitCode {
        match self {
            Status::Ok => ExitCode::SUCCESS,
            Status::Violation => ExitCode::from(1),
            Status::Error => ExitCode::from(2),
        }
    }
}

/// What a subcommand hands back before the envelope is added.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub status: Status,
    pub result: Value,
    pub certificate: Value,
}

impl Outcome {
    pub fn ok(result: Value) -> Self {
        Outcome {
            status: Status::Ok,
            result,
            certificate: Value::Null,
        }
    }

    pub fn with_certificate(mut self, certificate: Value) -> Self {
        self.certificate = certificate;
        self
    }

    /// `Ok` when `passed`, otherwise `Violation`.
    pub fn checked(mut self, passed: bool) -> Self {
        self.status = if passed { Status::Ok } else { Status::Violation };
        self
    }
}

pub struct Report {
    pub command: String,
    pub inputs: String,
    pub status: Status,
    pub result: Value,
    pub certificate: Value,
    pub error: Option<String>,
}

impl Report {
    pub fn to_value(&self) -> Value {
        let mut m = Map::new();
        m.insert("command".into(), json!(self.command));
        m.insert("inputs".into(), json!(self.inputs));
        m.insert("status".into(), json!(self.status.as_str()));
        if let Some(e) = &self.error {
            m.insert("error".into(), json!(e));
        }
        if !self.result.is_null() {
            m.insert("result".into(), self.result.clone());
        }
        if !self.certificate.is_null() {
            m.insert("certificate".into(), self.certificate.clone());
        }
        Value::Object(m)
    }

    pub fn render(&self, structured: bool) -> String {
        if structured {
            let mut s = serde_json::to_string_pretty(&self.to_value()).expect("serializable");
            s.push('\n');
            s
        } else {
            let mut out = String::new();
            write_block(&mut out, &self.to_value(), 0);
            out
        }
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("null".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.is_empty() => Some("[]".into()),
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
            Some(format!("[{}]", a.iter().map(|x| scalar(x).unwrap()).collect::<Vec<_>>().join(", ")))
        }
        Value::Object(o) if o.is_empty() => Some("{}".into()),
        _ => None,
    }
}

/// Indented `key: value` lines; lists as `- item`.
fn write_block(out: &mut String, v: &Value, indent: usize) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match scalar(x) {
                    Some(s) => writeln!(out, "{pad}{k}: {s}").unwrap(),
                    None => {
                        writeln!(out, "{pad}{k}:").unwrap();
                        write_block(out, x, indent + 2);
                    }
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                match scalar(x) {
                    Some(s) => writeln!(out, "{pad}- {s}").unwrap(),
                    None => {
                        writeln!(out, "{pad}-").unwrap();
                        write_block(out, x, indent + 2);
                    }
                }
            }
        }
        other => writeln!(out, "{pad}{}", scalar(other).unwrap()).unwrap(),
    }
}
