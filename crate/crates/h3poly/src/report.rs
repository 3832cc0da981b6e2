//! Structured verdicts shared by all report-valued checks.

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Pass,
    Fail,
    Accept,
    Reject,
    Inconclusive,
}

impl Verdict {
    pub fn is_positive(self) -> bool {
        matches!(self, Verdict::Pass | Verdict::Accept)
    }
}

/// One named condition with an optional machine-readable witness.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Condition {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl Condition {
    pub fn pass(name: &str) -> Self {
        Self { name: name.to_string(), pass: true, witness: None }
    }

    pub fn fail(name: &str, witness: Value) -> Self {
        Self { name: name.to_string(), pass: false, witness: Some(witness) }
    }

    pub fn with(name: &str, pass: bool, witness: Option<Value>) -> Self {
        Self { name: name.to_string(), pass, witness }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub verdict: Verdict,
    pub conditions: Vec<Condition>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub metrics: Option<Value>,
}

impl Report {
    /// `Pass` iff every condition passes.
    pub fn from_conditions(conditions: Vec<Condition>) -> Self {
        let verdict = if conditions.iter().all(|c| c.pass) { Verdict::Pass } else { Verdict::Fail };
        Self { verdict, conditions, metrics: None }
    }

    pub fn passed(&self) -> bool {
        self.verdict.is_positive()
    }

    pub fn condition(&self, name: &str) -> Option<&Condition> {
        self.conditions.iter().find(|c| c.name == name)
    }
}
