//! Verification reports: per-clause pass/fail with reproducible witnesses.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// A witness pins down the smallest index tuple at which a clause failed,
/// in the index space documented by the clause (element indices, basis
/// indices, ...). It is enough to re-evaluate the clause in isolation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub indices: Vec<usize>,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Clause {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

/// Outcome of one verifier run: an ordered list of named clauses.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct Report {
    pub clauses: Vec<Clause>,
}

impl Report {
    pub fn new() -> Report {
        Report::default()
    }

    pub fn pass(&mut self, name: &str) {
        self.clauses.push(Clause {
            name: name.to_string(),
            status: Status::Pass,
            witness: None,
        });
    }

    pub fn fail(&mut self, name: &str, indices: Vec<usize>, detail: impl Into<String>) {
        self.clauses.push(Clause {
            name: name.to_string(),
            status: Status::Fail,
            witness: Some(Witness {
                indices,
                detail: detail.into(),
            }),
        });
    }

    pub fn skip(&mut self, name: &str, why: impl Into<String>) {
        self.clauses.push(Clause {
            name: name.to_string(),
            status: Status::Skipped,
            witness: Some(Witness {
                indices: Vec::new(),
                detail: why.into(),
            }),
        });
    }

    /// Record a clause that either passed or failed at the given witness.
    pub fn check(&mut self, name: &str, failure: Option<(Vec<usize>, String)>) {
        match failure {
            None => self.pass(name),
            Some((indices, detail)) => self.fail(name, indices, detail),
        }
    }

    pub fn all_passed(&self) -> bool {
        self.clauses.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failed_clauses(&self) -> impl Iterator<Item = &Clause> {
        self.clauses.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn merge(&mut self, prefix: &str, other: Report) {
        for mut c in other.clauses {
            c.name = format!("{prefix}.{}", c.name);
            self.clauses.push(c);
        }
    }

    pub fn clause(&self, name: &str) -> Option<&Clause> {
        self.clauses.iter().find(|c| c.name == name)
    }
}
