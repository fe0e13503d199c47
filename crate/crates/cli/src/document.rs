use std::fmt;

use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

use crate::args::{Op, Options, Theory};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    Invalid,
    Undefined,
    VerificationFailed,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Invalid => 2,
            Status::Undefined => 3,
            Status::VerificationFailed => 4,
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("{path} is not a valid document: {message}")]
    Parse { path: String, message: String },
    /// An operand or option that does not satisfy the theory's schema.
    #[error("{name}: {message}")]
    Invalid { name: String, message: String },
    /// A well-formed instance on which the operation has no result.
    #[error("{name}: {message}")]
    Undefined { name: String, message: String },
}

impl CliError {
    pub fn invalid(e: impl fmt::Debug + fmt::Display) -> Self {
        CliError::Invalid { name: variant_name(&e), message: e.to_string() }
    }

    pub fn undefined(e: impl fmt::Debug + fmt::Display) -> Self {
        CliError::Undefined { name: variant_name(&e), message: e.to_string() }
    }

    pub fn status(&self) -> Status {
        match self {
            CliError::Undefined { .. } => Status::Undefined,
            _ => Status::Invalid,
        }
    }

    fn report(&self) -> ErrorReport {
        let (name, message) = match self {
            CliError::Io { .. } => ("Io".to_string(), self.to_string()),
            CliError::Parse { .. } => ("Parse".to_string(), self.to_string()),
            CliError::Invalid { name, message } | CliError::Undefined { name, message } => {
                (name.clone(), message.clone())
            }
        };
        ErrorReport { name, message }
    }
}

/// The enum variant an error value was built from, read off its `Debug`
/// form: `Incompatible("...")` gives `Incompatible`.
fn variant_name(e: &impl fmt::Debug) -> String {
    let debug = format!("{e:?}");
    let end = debug.find(|c: char| !c.is_alphanumeric() && c != '_').unwrap_or(debug.len());
    debug[..end].to_string()
}

#[derive(Debug, Clone, Serialize)]
pub struct ErrorReport {
    pub name: String,
    pub message: String,
}

/// What a theory computed: the result and, for checked operations, a
/// verification block with a verdict.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub result: Value,
    pub summary: String,
    pub verification: Option<Verification>,
}

#[derive(Debug, Clone)]
pub struct Verification {
    pub holds: Option<bool>,
    pub details: Value,
}

impl Verification {
    pub fn checked(holds: bool, mut details: Value) -> Self {
        details["holds"] = Value::Bool(holds);
        Verification { holds: Some(holds), details }
    }

    pub fn unverified(reason: String) -> Self {
        Verification { holds: None, details: serde_json::json!({"method": "unverified", "reason": reason}) }
    }
}

/// The machine-readable result of one invocation.
#[derive(Debug, Clone, Serialize)]
pub struct Document {
    pub theory: Theory,
    pub op: Op,
    pub status: Status,
    pub result: Value,
    pub verification: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorReport>,
    pub options: Options,
}

impl Document {
    pub fn new(theory: Theory, op: Op, options: Options, outcome: &Result<Outcome, CliError>) -> Self {
        let (status, result, verification, error) = match outcome {
            Ok(o) => {
                let failed = o.verification.as_ref().is_some_and(|v| v.holds == Some(false));
                let status = if failed { Status::VerificationFailed } else { Status::Ok };
                let verification = o.verification.as_ref().map_or(Value::Null, |v| v.details.clone());
                (status, o.result.clone(), verification, None)
            }
            Err(e) => (e.status(), Value::Null, Value::Null, Some(e.report())),
        };
        Document { theory, op, status, result, verification, error, options }
    }
}
