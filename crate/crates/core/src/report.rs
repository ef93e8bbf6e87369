//! Versioned JSON reports emitted by verification runs.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA_VERSION: &str = "v1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub name: String,
    /// Resolved parameters, defaults included.
    pub params: BTreeMap<String, Value>,
    pub pass: bool,
    pub witnesses: Value,
    /// Wall-clock seconds per phase. Absent unless requested, so that reports
    /// stay byte-identical across runs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<String, f64>>,
}

impl Report {
    pub fn new(name: &str, params: BTreeMap<String, Value>, pass: bool, witnesses: Value) -> Self {
        Report {
            schema: SCHEMA_VERSION.into(),
            name: name.into(),
            params,
            pass,
            witnesses,
            timings: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

/// JSON Schema (draft 2020-12) for [`Report`].
pub fn schema() -> Value {
    serde_json::json!({
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "$id": "urn:fanshift:report:v1",
        "title": "fanshift verification report",
        "type": "object",
        "required": ["schema", "name", "params", "pass", "witnesses"],
        "additionalProperties": false,
        "properties": {
            "schema": { "const": SCHEMA_VERSION },
            "name": {
                "enum": ["decomposition", "diam", "cantor", "impression", "product", "hlavna", "quotient", "juma", "distinguish", "orbit"]
            },
            "params": { "type": "object" },
            "pass": { "type": "boolean" },
            "witnesses": {},
            "timings": {
                "type": "object",
                "additionalProperties": { "type": "number", "minimum": 0 }
            }
        }
    })
}

pub fn schema_text() -> String {
    let mut s = serde_json::to_string_pretty(&schema()).expect("static schema");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schema_names_core_fields() {
        let s = schema();
        let req: Vec<&str> = s["required"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
        for f in ["name", "params", "pass"] {
            assert!(req.contains(&f));
        }
        assert_eq!(s["properties"]["schema"]["const"], SCHEMA_VERSION);
    }

    #[test]
    fn timings_are_omitted_by_default() {
        let r = Report::new("diam", BTreeMap::new(), true, Value::Null);
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert!(v.get("timings").is_none());
        let back: Report = serde_json::from_value(v).unwrap();
        assert_eq!(back, r);
    }
}
