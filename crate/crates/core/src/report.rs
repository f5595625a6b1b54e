//! Serializable verification reports.

use serde::{Deserialize, Serialize};

use crate::partition::{FamilyKind, LatticeFamily};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub elements: usize,
    pub chains: usize,
    pub rank: usize,
    pub basis: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// Outcome of one verification run. The determinant is kept as a decimal
/// string so arbitrarily large values survive serialization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub instance: String,
    pub family: FamilyKind,
    pub n: usize,
    #[serde(rename = "T")]
    pub t: Vec<usize>,
    pub vector: Option<Vec<i64>>,
    pub counts: Counts,
    pub determinant: Option<String>,
    pub checks: Vec<Check>,
    pub millis: u64,
}

impl CertificateReport {
    pub fn new(instance: impl Into<String>, family: &LatticeFamily) -> Self {
        Self {
            instance: instance.into(),
            family: family.kind,
            n: family.n,
            t: family.t.clone(),
            vector: None,
            counts: Counts::default(),
            determinant: None,
            checks: Vec::new(),
            millis: 0,
        }
    }

    pub fn check(&mut self, name: &str, pass: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.to_string(),
            pass,
            detail: detail.into(),
        });
    }

    /// Every check passed (and at least one ran).
    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}
