//! Versioned, machine-readable result documents.
//!
//! The `result` payload and `table` lines are fully determined by the command, its
//! parameters and the canonical input, so cached documents render to the same bytes as
//! fresh ones. Timing lives in a separate block that callers may leave out.

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const REPORT_SCHEMA: &str = "macx-report";
pub const REPORT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InputInfo {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub n: usize,
    /// Content hash of the canonical complex.
    pub hash: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub elapsed_ms: f64,
    pub cached: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema: String,
    pub version: u32,
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input: Option<InputInfo>,
    /// Parameters that affect the result, keyed by name in sorted order.
    pub parameters: Value,
    pub result: Value,
    /// Human-readable rendering of `result`.
    pub table: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

impl ReportDocument {
    pub fn new(
        command: impl Into<String>,
        input: Option<InputInfo>,
        parameters: Value,
        result: Value,
    ) -> Self {
        ReportDocument {
            schema: REPORT_SCHEMA.into(),
            version: REPORT_VERSION,
            command: command.into(),
            input,
            parameters,
            result,
            table: Vec::new(),
            timing: None,
        }
    }

    pub fn with_table(mut self, table: Vec<String>) -> Self {
        self.table = table;
        self
    }

    /// Pretty JSON followed by a newline. Object keys come out sorted.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_table(&self) -> String {
        let mut s = String::new();
        for line in &self.table {
            s.push_str(line);
            s.push('\n');
        }
        if let Some(t) = &self.timing {
            s.push_str(&format!(
                "time: {:.1} ms{}\n",
                t.elapsed_ms,
                if t.cached { " (cached)" } else { "" }
            ));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn round_trip_and_sorted_keys() {
        let r = ReportDocument::new(
            "betti",
            None,
            json!({"limit": 18, "format": "json"}),
            json!({"z": 1, "a": 2}),
        )
        .with_table(vec!["s p rank".into()]);
        let text = r.to_json();
        assert!(text.find("\"format\"").unwrap() < text.find("\"limit\"").unwrap());
        assert!(text.find("\"a\"").unwrap() < text.find("\"z\"").unwrap());
        let back: ReportDocument = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.to_json(), text);
    }
}
