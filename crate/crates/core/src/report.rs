//! Header stamped on every JSON report.

use serde::{Deserialize, Serialize};

use crate::weyl::WordStrategy;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportHeader {
    pub tool: String,
    pub version: String,
    /// Reduced-word table in force, see [`WordStrategy::name`].
    pub word_table: String,
}

impl ReportHeader {
    pub fn current() -> Self {
        ReportHeader {
            tool: "klrd".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            word_table: WordStrategy::from_env().name().into(),
        }
    }
}

/// `{"header": .., "command": .., "passed": .., "result": ..}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report<T> {
    pub header: ReportHeader,
    pub command: String,
    pub passed: bool,
    pub result: T,
}

impl<T: Serialize> Report<T> {
    pub fn new(command: &str, passed: bool, result: T) -> Self {
        Report { header: ReportHeader::current(), command: command.into(), passed, result }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}
