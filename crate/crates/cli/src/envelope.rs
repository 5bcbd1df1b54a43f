//! The JSON result envelope. Everything is built as `serde_json::Value`
//! with the default (BTreeMap-backed) object representation, so keys are
//! emitted in lexicographic order and parse → re-serialize round-trips are
//! byte-identical.

use serde_json::{json, Map, Value};
use std::time::Instant;

pub const SCHEMA_VERSION: u64 = 1;

pub fn engine_version() -> &'static str {
    env!("CARGO_PKG_VERSION")
}

pub struct Envelope {
    command: String,
    parameters: Map<String, Value>,
    started: Instant,
}

impl Envelope {
    pub fn start(command: &str) -> Self {
        Envelope {
            command: command.to_string(),
            parameters: Map::new(),
            started: Instant::now(),
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.parameters.insert(key.to_string(), value.into());
        self
    }

    pub fn finish(self, payload: Value) -> Value {
        json!({
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "parameters": Value::Object(self.parameters),
            "payload": payload,
            "engine_version": engine_version(),
            "timing_ms": self.started.elapsed().as_millis() as u64,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_is_byte_identical() {
        let env = Envelope::start("decompose")
            .param("algebra", "h")
            .param("degree", 2)
            .finish(json!({"entries": [{"multiplicity": "1", "partition": [2, 2]}]}));
        let text = serde_json::to_string(&env).unwrap();
        let parsed: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_string(&parsed).unwrap(), text);
    }
}
