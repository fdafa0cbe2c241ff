use std::fmt;

use serde::Serialize;

/// Outcome of one named check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    /// Number of basis tuples or sample points examined.
    pub cases: u64,
    /// First counterexample, when the check failed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Ordered list of check outcomes.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<CheckOutcome>,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, name: impl Into<String>, cases: u64, witness: Option<String>) -> &mut CheckOutcome {
        self.checks.push(CheckOutcome {
            name: name.into(),
            passed: witness.is_none(),
            cases,
            witness,
            note: None,
        });
        self.checks.last_mut().unwrap()
    }

    pub fn pass(&mut self, name: impl Into<String>, cases: u64) -> &mut CheckOutcome {
        self.push(name, cases, None)
    }

    pub fn fail(&mut self, name: impl Into<String>, cases: u64, witness: impl Into<String>) -> &mut CheckOutcome {
        self.push(name, cases, Some(witness.into()))
    }

    pub fn extend(&mut self, other: ValidationReport) {
        self.checks.extend(other.checks);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn passed(&self, name: &str) -> bool {
        self.get(name).is_some_and(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl CheckOutcome {
    pub fn with_note(&mut self, note: impl Into<String>) -> &mut Self {
        self.note = Some(note.into());
        self
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            write!(f, "{:<4} {} ({} cases)", if c.passed { "ok" } else { "FAIL" }, c.name, c.cases)?;
            if let Some(w) = &c.witness {
                write!(f, ": {w}")?;
            }
            if let Some(n) = &c.note {
                write!(f, " [{n}]")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
