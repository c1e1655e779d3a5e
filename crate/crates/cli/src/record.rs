//! The JSON record emitted by every command and stored in the cache.

use std::collections::BTreeMap;

use ptile_core::BudgetUsage;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    /// A definite answer, whatever it is.
    Computed,
    /// The budget ran out or the answer is not known.
    Unknown,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Computed => 0,
            Status::Unknown => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunRecord {
    pub command: String,
    pub group: String,
    /// Canonical parameters; together with `command` and `version` they form the cache key.
    pub parameters: BTreeMap<String, String>,
    pub status: Status,
    pub result: Value,
    /// Human-readable lines, printed verbatim without `--json`.
    pub summary: Vec<String>,
    pub budget: Option<BudgetUsage>,
    pub version: String,
    pub hash: String,
}

/// Hex SHA-256 over the canonical JSON of `(command, parameters, version)`.
pub fn cache_key(command: &str, parameters: &BTreeMap<String, String>, version: &str) -> String {
    let canonical = serde_json::to_string(&(command, parameters, version)).expect("strings serialize");
    hex::encode(Sha256::digest(canonical.as_bytes()))
}

impl RunRecord {
    /// Whether `hash` matches the key fields.
    pub fn key_is_consistent(&self) -> bool {
        self.hash == cache_key(&self.command, &self.parameters, &self.version)
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }
}
