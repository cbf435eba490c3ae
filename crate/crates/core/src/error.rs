use std::fmt;

use serde::Serialize;

/// Errors raised by the algorithms in this crate.
///
/// `Failure` is a sound negative: the search ran to completion (or to its
/// retry budget) and the requested object was not found. It is kept apart
/// from `Input` and `Resource` so callers can map it to a distinct exit code.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("resource limit: {0}")]
    Resource(String),
    #[error("{0}")]
    Failure(FailureReport),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}

pub(crate) fn resource<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Resource(msg.into()))
}

/// One named quantity recorded while a pipeline runs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Quantity {
    pub name: String,
    pub value: String,
}

/// A pipeline stage together with the quantities it produced.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct StageEntry {
    pub stage: String,
    pub quantities: Vec<Quantity>,
}

impl StageEntry {
    pub fn new(stage: impl Into<String>) -> Self {
        StageEntry {
            stage: stage.into(),
            quantities: Vec::new(),
        }
    }

    pub fn with(mut self, name: impl Into<String>, value: impl ToString) -> Self {
        self.quantities.push(Quantity {
            name: name.into(),
            value: value.to_string(),
        });
        self
    }

    pub fn get(&self, name: &str) -> Option<&str> {
        self.quantities
            .iter()
            .find(|q| q.name == name)
            .map(|q| q.value.as_str())
    }
}

/// Names the first stage that failed, with the log of every stage before it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FailureReport {
    pub stage: String,
    pub reason: String,
    pub log: Vec<StageEntry>,
}

impl FailureReport {
    pub fn new(stage: impl Into<String>, reason: impl Into<String>) -> Self {
        FailureReport {
            stage: stage.into(),
            reason: reason.into(),
            log: Vec::new(),
        }
    }

    pub fn with_log(mut self, log: Vec<StageEntry>) -> Self {
        self.log = log;
        self
    }
}

impl fmt::Display for FailureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "failed at stage `{}`: {}", self.stage, self.reason)
    }
}

impl From<FailureReport> for Error {
    fn from(r: FailureReport) -> Self {
        Error::Failure(r)
    }
}
