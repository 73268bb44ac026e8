use clap::ValueEnum;
use gradlie::Error;
use serde::Serialize;
use serde_json::{json, Value};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    /// One JSON document on stdout.
    Structured,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Success,
    /// A counterexample, strict inclusion or violated statement.
    Failure,
    InputError,
    Inconclusive,
}

impl Outcome {
    pub fn code(self) -> u8 {
        match self {
            Outcome::Success => 0,
            Outcome::Failure => 1,
            Outcome::InputError => 2,
            Outcome::Inconclusive => 3,
        }
    }
}

pub struct Report {
    pub outcome: Outcome,
    pub verdict: String,
    pub text: String,
    pub results: Value,
}

impl Report {
    pub fn new(outcome: Outcome, verdict: impl Into<String>, text: String, results: impl Serialize) -> Report {
        Report { outcome, verdict: verdict.into(), text, results: to_value(&results) }
    }
}

/// A library error plus optional context for the reader, such as a caret
/// under the offending position of an expression.
pub struct Failure {
    pub error: Error,
    pub context: Option<String>,
}

impl From<Error> for Failure {
    fn from(error: Error) -> Failure {
        Failure { error, context: None }
    }
}

pub fn to_value(v: &impl Serialize) -> Value {
    serde_json::to_value(v).expect("reports serialize to JSON")
}

pub fn config(args: &impl Serialize) -> Value {
    to_value(args)
}

fn error_kind(e: &Error) -> String {
    let dbg = format!("{e:?}");
    dbg.split(|c: char| !c.is_alphanumeric()).next().unwrap_or_default().to_string()
}

fn error_outcome(e: &Error) -> Outcome {
    match e {
        Error::BudgetExceeded { .. } | Error::ExpansionTooLarge { .. } => Outcome::Inconclusive,
        Error::TheoremViolation(_) | Error::SoundnessFailure { .. } => Outcome::Failure,
        _ => Outcome::InputError,
    }
}

/// Writes to stdout; a closed pipe (e.g. `| head`) is not an error.
fn out(s: &str) {
    use std::io::Write;
    let mut lock = std::io::stdout().lock();
    let _ = lock.write_all(s.as_bytes()).and_then(|()| lock.flush());
}

pub fn emit(format: Format, command: &str, config: Value, result: Result<Report, Failure>) -> Outcome {
    match (format, result) {
        (Format::Text, Ok(r)) => {
            let sep = if r.text.ends_with('\n') { "" } else { "\n" };
            out(&format!("{}{sep}verdict: {}\n", r.text, r.verdict));
            r.outcome
        }
        (Format::Structured, Ok(r)) => {
            let doc = json!({
                "schema_version": SCHEMA_VERSION,
                "command": command,
                "config": config,
                "results": r.results,
                "verdict": r.verdict,
            });
            out(&format!("{}\n", serde_json::to_string_pretty(&doc).expect("JSON")));
            r.outcome
        }
        (Format::Text, Err(f)) => {
            eprintln!("error: {}", f.error);
            if let Some(c) = &f.context {
                eprintln!("{c}");
            }
            error_outcome(&f.error)
        }
        (Format::Structured, Err(f)) => {
            let doc = json!({
                "schema_version": SCHEMA_VERSION,
                "command": command,
                "config": config,
                "error": {
                    "kind": error_kind(&f.error),
                    "message": f.error.to_string(),
                    "context": f.context,
                },
                "verdict": "error",
            });
            out(&format!("{}\n", serde_json::to_string_pretty(&doc).expect("JSON")));
            error_outcome(&f.error)
        }
    }
}
