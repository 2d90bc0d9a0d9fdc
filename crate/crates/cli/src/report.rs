//! The JSON report written for every invocation.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use crate::input::SCHEMA_VERSION;

/// Outcome classes, in exit-code order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Success,
    /// A negative verdict: not compatible, member, obstructed, failed
    /// assertion.
    Negative,
    InputError,
    BoundExhausted,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Success => 0,
            Status::Negative => 1,
            Status::InputError => 2,
            Status::BoundExhausted => 3,
        }
    }
}

/// The command as invoked: its name, input files and parameters.
#[derive(Debug, Clone, Serialize)]
pub struct Job {
    pub command: String,
    pub inputs: Vec<String>,
    pub parameters: BTreeMap<String, Value>,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub job: Job,
    pub status: Status,
    pub exit_code: i32,
    pub summary: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Report {
    pub fn new(job: Job, status: Status, summary: String, result: Option<Value>, error: Option<String>) -> Self {
        Report { schema: SCHEMA_VERSION, job, status, exit_code: status.exit_code(), summary, result, error }
    }

    pub fn write(&self, path: &Path) -> std::io::Result<()> {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        std::fs::write(path, text)
    }
}
