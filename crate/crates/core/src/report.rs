//! JSON reports with a stable key order.

use serde::Serialize;
use serde_json::{Map, Value};

/// One command's outcome. Keys serialize sorted, so identical inputs give
/// byte-identical output apart from `runtime_ms`.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub exhaustive: Option<bool>,
    pub runtime_ms: u64,
}

impl Report {
    pub fn new(command: impl Into<String>, inputs: impl Serialize, results: impl Serialize) -> Self {
        Report {
            command: command.into(),
            inputs: to_value(inputs),
            results: to_value(results),
            exhaustive: None,
            runtime_ms: 0,
        }
    }

    pub fn with_exhaustive(mut self, exhaustive: bool) -> Self {
        self.exhaustive = Some(exhaustive);
        self
    }

    pub fn to_value(&self) -> Value {
        let mut map = Map::new();
        map.insert("command".into(), Value::String(self.command.clone()));
        map.insert("inputs".into(), self.inputs.clone());
        map.insert("results".into(), self.results.clone());
        if let Some(e) = self.exhaustive {
            map.insert("exhaustive".into(), Value::Bool(e));
        }
        map.insert("runtime_ms".into(), Value::from(self.runtime_ms));
        Value::Object(map)
    }

    /// Compact single-line JSON.
    pub fn to_json(&self) -> String {
        self.to_value().to_string()
    }
}

/// Round-trips through `Value`, whose maps are ordered by key.
pub fn to_value(x: impl Serialize) -> Value {
    serde_json::to_value(x).expect("report payloads serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn keys_are_sorted() {
        #[derive(Serialize)]
        struct Out {
            zeta: u8,
            alpha: u8,
        }
        let mut r = Report::new("bound", json!({"n": 12, "m": 30}), Out { zeta: 1, alpha: 2 });
        r.runtime_ms = 5;
        let s = r.with_exhaustive(true).to_json();
        assert_eq!(
            s,
            r#"{"command":"bound","exhaustive":true,"inputs":{"m":30,"n":12},"results":{"alpha":2,"zeta":1},"runtime_ms":5}"#
        );
    }

    #[test]
    fn exhaustive_omitted_when_not_applicable() {
        let r = Report::new("witness", json!({}), json!(null));
        assert!(!r.to_json().contains("exhaustive"));
    }
}
