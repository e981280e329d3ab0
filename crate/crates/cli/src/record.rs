use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::CliResult;

pub const SCHEMA_VERSION: u32 = 1;

/// One JSON line describing a finished command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RunRecord {
    pub schema_version: u32,
    pub command: String,
    pub parameters: Value,
    pub seconds: f64,
    pub result: Value,
}

impl RunRecord {
    pub fn new(command: &str, parameters: Value, seconds: f64, result: Value) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            parameters,
            seconds,
            result,
        }
    }

    pub fn to_line(&self) -> CliResult<String> {
        Ok(serde_json::to_string(self)?)
    }
}
