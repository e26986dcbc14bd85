use std::collections::BTreeMap;
use std::fmt::Display;

use serde::Serialize;

/// One verified identity: parameters, the expected and actual values as
/// decimal strings, and whether they agree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub parameters: BTreeMap<String, String>,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

impl Check {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            parameters: BTreeMap::new(),
            expected: String::new(),
            actual: String::new(),
            pass: false,
        }
    }

    pub fn with(mut self, key: &str, value: impl Display) -> Self {
        self.parameters.insert(key.to_owned(), value.to_string());
        self
    }

    /// Exact equality of the two renderings.
    pub fn equal(mut self, expected: impl Display, actual: impl Display) -> Self {
        self.expected = expected.to_string();
        self.actual = actual.to_string();
        self.pass = self.expected == self.actual;
        self
    }

    /// A predicate check where "expected" is a description of the condition.
    pub fn holds(mut self, condition: impl Into<String>, actual: impl Display, pass: bool) -> Self {
        self.expected = condition.into();
        self.actual = actual.to_string();
        self.pass = pass;
        self
    }

    pub fn param_string(&self) -> String {
        self.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(",")
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
    pub summary: Summary,
}

impl VerificationReport {
    /// Sorts by (name, parameters) so the report is independent of the order
    /// checks finished in.
    pub fn from_checks(mut checks: Vec<Check>) -> Self {
        checks.sort_by(|a, b| (&a.name, a.param_string()).cmp(&(&b.name, b.param_string())));
        let passed = checks.iter().filter(|c| c.pass).count();
        let summary = Summary { total: checks.len(), passed, failed: checks.len() - passed };
        Self { checks, summary }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}
