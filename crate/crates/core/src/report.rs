//! The verification report and its canonical JSON form.

use std::fmt;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::incidence::{ArrangementSummary, FivePointReport, PointCounts};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Pass => "pass",
            Self::Fail => "fail",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub expected: String,
    pub actual: String,
}

/// String-keyed entries serialized as a JSON object in insertion order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ordered<T>(pub Vec<(String, T)>);

impl<T> Default for Ordered<T> {
    fn default() -> Self {
        Self(Vec::new())
    }
}

impl<T> Ordered<T> {
    pub fn insert(&mut self, key: impl Into<String>, value: T) {
        self.0.push((key.into(), value));
    }

    pub fn get(&self, key: &str) -> Option<&T> {
        self.0.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl<T: Serialize> Serialize for Ordered<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ReportCounts {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub total: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub smooth: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub split: Option<usize>,
    #[serde(skip_serializing_if = "Ordered::is_empty")]
    pub per_point: Ordered<PointCounts>,
    /// Line equations in polynomial text form.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub lines81: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub signature: Option<String>,
    /// Number of 6-subsets selected by each label predicate.
    #[serde(skip_serializing_if = "Ordered::is_empty")]
    pub predicates: Ordered<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub five_point: Option<FivePointReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NamedArrangement {
    pub name: String,
    #[serde(flatten)]
    pub summary: ArrangementSummary,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub manifest_version: u32,
    pub scope: String,
    pub status: Status,
    pub counts: ReportCounts,
    pub arrangements: Vec<NamedArrangement>,
    /// Exact constants, in readable field notation.
    pub scalars: Ordered<String>,
    /// The label predicate that reproduces the geometric conic count.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conic_predicate: Option<String>,
    /// Differences between the computation and the reference values.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub checks: Vec<Check>,
}

impl CensusReport {
    pub fn new(scope: impl Into<String>) -> Self {
        Self {
            manifest_version: crate::expected::manifest().version,
            scope: scope.into(),
            status: Status::Pass,
            counts: ReportCounts::default(),
            arrangements: Vec::new(),
            scalars: Ordered::default(),
            conic_predicate: None,
            notes: Vec::new(),
            checks: Vec::new(),
        }
    }

    pub fn check(&mut self, name: &str, ok: bool, expected: impl ToString, actual: impl ToString) {
        let status = if ok { Status::Pass } else { Status::Fail };
        if !ok {
            self.status = Status::Fail;
        }
        self.checks.push(Check { name: name.to_string(), status, expected: expected.to_string(), actual: actual.to_string() });
    }

    /// Checks `actual == expected`.
    pub fn check_eq<T: PartialEq + fmt::Display>(&mut self, name: &str, expected: T, actual: T) {
        self.check(name, expected == actual, expected, actual);
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    /// Pretty JSON with a trailing newline; identical inputs give identical
    /// bytes.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// One line per check.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!("{:<4} {:<40} expected {} got {}\n", c.status, c.name, c.expected, c.actual));
        }
        let failed = self.failures().count();
        out.push_str(&format!("{}: {} checks, {} failed\n", self.scope, self.checks.len(), failed));
        out
    }
}
