//! Report envelope shared by every subcommand.

use serde::Serialize;
use serde_json::{Map, Value};

pub const ARTIFACT: &str = "stabcoh";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Computed,
    Verified,
    Falsified,
}

impl Status {
    pub fn from_check(ok: bool) -> Self {
        if ok {
            Status::Verified
        } else {
            Status::Falsified
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Status::Computed | Status::Verified => 0,
            Status::Falsified => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SeedSource {
    Flag,
    Env,
    Default,
}

/// A finished computation in all three output forms.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub status: Status,
    pub json: Value,
    pub csv: String,
    pub table: String,
}

impl Outcome {
    pub fn new<T: Serialize>(status: Status, payload: &T, csv: String, table: String) -> Self {
        Self {
            status,
            json: serde_json::to_value(payload).expect("report serializes"),
            csv,
            table,
        }
    }
}

/// Builds the top-level JSON object: envelope fields first, then payload
/// fields that the envelope does not already carry.
pub fn envelope(
    subcommand: &str,
    params: Value,
    seed: u64,
    seed_source: SeedSource,
    status: Status,
    payload: Value,
) -> Value {
    let mut obj = Map::new();
    obj.insert("artifact".into(), ARTIFACT.into());
    obj.insert("version".into(), VERSION.into());
    obj.insert("subcommand".into(), subcommand.into());
    obj.insert("params".into(), params);
    obj.insert("seed".into(), seed.into());
    obj.insert(
        "seed_source".into(),
        serde_json::to_value(seed_source).expect("enum"),
    );
    obj.insert("status".into(), serde_json::to_value(status).expect("enum"));
    match payload {
        Value::Object(fields) => {
            for (k, v) in fields {
                if !obj.contains_key(&k) {
                    obj.insert(k, v);
                }
            }
        }
        other => {
            obj.insert("result".into(), other);
        }
    }
    Value::Object(obj)
}
