//! Verification report documents.

use std::collections::BTreeMap;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Inconclusive,
}

/// `lhs = rhs` with both sides fully parenthesized and re-parsable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Equation {
    pub lhs: String,
    pub rhs: String,
}

impl Equation {
    pub fn new(lhs: impl Into<String>, rhs: impl Into<String>) -> Self {
        Equation {
            lhs: lhs.into(),
            rhs: rhs.into(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    pub certificate: Vec<Equation>,
    pub bounds: BTreeMap<String, u64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Check {
    pub fn new(name: &str) -> Self {
        Check {
            name: name.into(),
            status: CheckStatus::Pass,
            certificate: Vec::new(),
            bounds: BTreeMap::new(),
            notes: Vec::new(),
        }
    }

    pub fn bound(mut self, key: &str, v: u64) -> Self {
        self.bounds.insert(key.into(), v);
        self
    }

    pub fn record(&mut self, eq: Equation) {
        self.certificate.push(eq);
    }

    /// Marks the check failed with a note.
    pub fn fail(&mut self, note: impl Into<String>) {
        self.status = CheckStatus::Fail;
        self.notes.push(note.into());
    }

    pub fn expect(&mut self, ok: bool, note: impl FnOnce() -> String) {
        if !ok {
            self.fail(note());
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == CheckStatus::Pass)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

/// Parenthesized rendering for certificates.
pub fn paren(s: &str) -> String {
    format!("({s})")
}
