//! Itemized pass/fail reports with structured witnesses.
//!
//! Every verifier in the crate sweeps a family of identities over basis
//! data and reports one named check per identity family. A failure always
//! carries a witness: the tuple it failed on and both sides of the
//! identity, so a broken structure constant is localizable from the report
//! alone.

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Report { checks: Vec::new() }
    }

    pub fn pass(&mut self, name: &str) {
        self.checks.push(Check {
            name: name.to_string(),
            status: Status::Pass,
            witness: None,
        });
    }

    pub fn fail(&mut self, name: &str, witness: Value) {
        self.checks.push(Check {
            name: name.to_string(),
            status: Status::Fail,
            witness: Some(witness),
        });
    }

    pub fn skip(&mut self, name: &str) {
        self.checks.push(Check {
            name: name.to_string(),
            status: Status::Skipped,
            witness: None,
        });
    }

    /// Record a check from an optional witness: `None` passes.
    pub fn item(&mut self, name: &str, witness: Option<Value>) {
        match witness {
            None => self.pass(name),
            Some(w) => self.fail(name, w),
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn merge(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    /// Merge with every check name prefixed, for nested reports.
    pub fn merge_prefixed(&mut self, prefix: &str, other: Report) {
        for mut c in other.checks {
            c.name = format!("{prefix}.{}", c.name);
            self.checks.push(c);
        }
    }
}

impl std::fmt::Display for Report {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Skipped => "skip",
            };
            write!(f, "{tag}  {}", c.name)?;
            if let Some(w) = &c.witness {
                write!(f, "  witness: {w}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
