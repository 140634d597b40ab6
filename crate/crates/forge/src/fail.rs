use serde_json::Value;
use std::path::Path;

/// How a command run can go wrong. `Parse` maps to exit code 2 and is
/// printed to stderr; `Validation` maps to exit code 1 and carries a
/// serialized violation report for the normal output sink.
pub enum Failure {
    Parse(String),
    Validation(Value),
}

pub type CmdResult = Result<Value, Failure>;

pub fn parse_err(msg: impl Into<String>) -> Failure {
    Failure::Parse(msg.into())
}

/// Bare violation list; the dispatcher wraps it into a full report with
/// the command's schema header.
pub fn fail_with(violations: Vec<Value>) -> Failure {
    Failure::Validation(Value::Array(violations))
}

pub fn violation(kind: &str, message: impl Into<String>) -> Value {
    serde_json::json!({"kind": kind, "message": message.into()})
}

pub fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| parse_err(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| parse_err(format!("{}: invalid JSON: {e}", path.display())))
}
