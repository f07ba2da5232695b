use std::io::Write;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail,
}

impl Outcome {
    pub fn of(b: bool) -> Self {
        if b {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }
}

/// The report around every command result. Field order is fixed, and
/// timings only appear on request, so identical inputs give identical bytes.
#[derive(Debug, Default, Serialize)]
pub struct Envelope {
    command: String,
    tool: &'static str,
    version: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    input: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    digest: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    verdict: Option<Outcome>,
    #[serde(skip_serializing_if = "Option::is_none")]
    result: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    recheck: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    timings: Option<Value>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

impl Envelope {
    pub fn new(input: Option<String>, bytes: Option<&[u8]>) -> Self {
        Envelope {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            input,
            digest: bytes.map(|b| format!("sha256:{}", sha256_hex(b))),
            ..Default::default()
        }
    }

    pub fn with_result(mut self, verdict: Outcome, result: Value, recheck: Option<Value>) -> Self {
        self.verdict = Some(verdict);
        self.result = Some(result);
        self.recheck = recheck;
        self
    }

    pub fn with_timings(mut self, t: Value) -> Self {
        self.timings = Some(t);
        self
    }

    pub fn with_error(mut self, e: &borelbocs::Error) -> Self {
        let (kind, pointer) = match e {
            borelbocs::Error::Input { pointer, .. } => ("input", Some(pointer.clone())),
            borelbocs::Error::TheoremViolation(_) => ("theorem_violation", None),
            borelbocs::Error::Precondition(_) => ("precondition", None),
            borelbocs::Error::Budget(_) => ("budget", None),
            borelbocs::Error::Unsupported(_) => ("unsupported", None),
            _ => ("invalid", None),
        };
        let mut obj = serde_json::json!({ "kind": kind, "message": e.to_string(), "exit_code": e.exit_code() });
        if let Some(p) = pointer {
            obj["pointer"] = Value::String(p);
        }
        self.error = Some(obj);
        self
    }

    pub fn render(mut self, command: &str) -> String {
        self.command = command.to_string();
        serde_json::to_string_pretty(&self).expect("reports serialise")
    }
}

/// Print a line, ignoring a closed stdout (`borelbocs ... | head`).
pub fn emit(line: impl std::fmt::Display) {
    let _ = writeln!(std::io::stdout().lock(), "{line}");
}
