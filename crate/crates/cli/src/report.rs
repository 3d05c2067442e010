//! The report every subcommand produces: a human-readable text rendering
//! and a schema-versioned JSON document.

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA: &str = "cm-type-lab/1";

/// Exit statuses shared by all subcommands.
pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    /// The argument list, without the program name.
    pub command: Vec<String>,
    pub inputs: Value,
    pub results: Value,
    pub trace: Value,
    pub precision: Option<u32>,
    pub exit_status: i32,
    #[serde(skip)]
    pub text: Vec<String>,
}

impl Report {
    pub fn new(command: Vec<String>, inputs: Value) -> Self {
        Report {
            schema: SCHEMA,
            command,
            inputs,
            results: Value::Null,
            trace: Value::Array(Vec::new()),
            precision: None,
            exit_status: EXIT_OK,
            text: Vec::new(),
        }
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.text.push(s.into());
    }

    /// Marks the report as a mathematical negative (exit status 1).
    pub fn negative(&mut self) {
        self.exit_status = EXIT_NEGATIVE;
    }

    /// Pretty JSON with a trailing newline. Object keys are sorted by
    /// `serde_json`'s default map, so equal reports give equal bytes.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

/// A failure before any mathematics ran: bad arguments, unparsable input,
/// unmet preconditions, or a missing corpus.
#[derive(Debug)]
pub struct UsageError(pub String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}
