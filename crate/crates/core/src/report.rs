//! Structured pass/fail records.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::matcat::Morphism;
use crate::scalar::FieldTag;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Infeasible,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Infeasible => "infeasible",
        })
    }
}

/// Outcome of one axiom or lemma check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub axiom: String,
    pub field: FieldTag,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Morphism>,
    pub residual: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
}

impl Report {
    pub fn new(axiom: impl Into<String>, field: FieldTag, status: Status, residual: f64) -> Report {
        Report {
            axiom: axiom.into(),
            field,
            status,
            witness: None,
            residual,
            detail: None,
        }
    }

    /// Pass iff `ok`.
    pub fn check(axiom: impl Into<String>, field: FieldTag, ok: bool, residual: f64) -> Report {
        let status = if ok { Status::Pass } else { Status::Fail };
        Report::new(axiom, field, status, residual)
    }

    pub fn with_witness(mut self, witness: Morphism) -> Report {
        self.witness = Some(witness);
        self
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Report {
        self.detail = Some(detail.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// One line for text-mode output.
    pub fn line(&self) -> String {
        let mut s = format!(
            "[{}] {} ({}) residual={:.3e}",
            self.status, self.axiom, self.field, self.residual
        );
        if let Some(d) = &self.detail {
            s.push_str(" :: ");
            s.push_str(d);
        }
        s
    }
}

/// Aggregate of several reports, the shape written by campaign commands.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub command: String,
    pub field: FieldTag,
    pub seed: u64,
    pub reports: Vec<Report>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.reports.iter().all(Report::passed)
    }

    /// Reports sorted by check id, the canonical order for output.
    pub fn sorted(mut self) -> SuiteReport {
        self.reports.sort_by(|a, b| a.axiom.cmp(&b.axiom));
        self
    }
}
