use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::cli::Format;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Holds,
    Fails,
    Ok,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Holds | Status::Ok => 0,
            Status::Fails => 1,
            Status::Error => 2,
        }
    }
}

/// What a command found, before it is wrapped into a report.
pub struct Outcome {
    pub status: Status,
    pub lines: Vec<String>,
    pub result: Value,
    /// JSON document produced by the command (path, cochain, algebroid).
    pub artifact: Option<Value>,
}

impl Outcome {
    pub fn new(status: Status, result: impl Serialize) -> Self {
        Self {
            status,
            lines: Vec::new(),
            result: serde_json::to_value(result).expect("reports serialize"),
            artifact: None,
        }
    }

    pub fn line(mut self, s: impl Into<String>) -> Self {
        self.lines.push(s.into());
        self
    }

    pub fn artifact(mut self, a: impl Serialize) -> Self {
        self.artifact = Some(serde_json::to_value(a).expect("artifacts serialize"));
        self
    }
}

#[derive(Serialize)]
pub struct Report<'a> {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'a str,
    pub input_sha256: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
    pub result: &'a Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub artifact: Option<&'a Value>,
}

/// SHA-256 over the inputs, each prefixed by its length.
pub fn digest(inputs: &[Vec<u8>]) -> String {
    let mut h = Sha256::new();
    for i in inputs {
        h.update((i.len() as u64).to_le_bytes());
        h.update(i);
    }
    format!("{:x}", h.finalize())
}

pub fn render(report: &Report, lines: &[String], format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut s = format!("{} {} {}\n", report.tool, report.version, report.command);
            s += &format!("input sha256: {}\n", report.input_sha256);
            s += &format!(
                "status: {}\n",
                serde_json::to_value(report.status).unwrap().as_str().unwrap()
            );
            for l in lines {
                s += l;
                s.push('\n');
            }
            if let Some(t) = report.timing_ms {
                s += &format!("time: {t} ms\n");
            }
            if let Some(a) = report.artifact {
                s += &serde_json::to_string_pretty(a).expect("artifacts serialize");
                s.push('\n');
            }
            s
        }
    }
}
