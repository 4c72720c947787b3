use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Outcome of an exhaustive check: what was claimed, over which range, and
/// every counterexample found.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub claim: String,
    pub range: String,
    pub violations: Vec<Value>,
}

impl Report {
    pub fn new(claim: impl Into<String>, range: impl Into<String>) -> Report {
        Report { claim: claim.into(), range: range.into(), violations: vec![] }
    }

    pub fn violation(&mut self, v: Value) {
        self.violations.push(v);
    }

    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}
