//! Pass/fail outcome shared by the verification routines.

use serde::Serialize;

const MAX_FAILURES: usize = 32;

/// Result of a verification harness: number of identities checked, the
/// first counterexample and (up to a cap) every later one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    pub checks: usize,
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<String>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>) -> Self {
        CheckReport {
            name: name.into(),
            passed: true,
            checks: 0,
            witness: None,
            failures: Vec::new(),
        }
    }

    /// Records one check.
    pub fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) -> bool {
        self.checks += 1;
        if !ok {
            self.record(witness());
        }
        ok
    }

    fn record(&mut self, w: String) {
        if self.passed {
            self.passed = false;
            self.witness = Some(w.clone());
        }
        if self.failures.len() < MAX_FAILURES {
            self.failures.push(w);
        }
    }

    /// True if some recorded failure starts with `prefix`.
    pub fn failed_with(&self, prefix: &str) -> bool {
        self.failures.iter().any(|f| f.starts_with(prefix))
    }

    pub fn fail(&mut self, witness: impl Into<String>) {
        self.check(false, || witness.into());
    }

    /// Folds another report into this one.
    pub fn absorb(&mut self, o: CheckReport) {
        self.checks += o.checks;
        for f in o.failures {
            self.record(format!("{}: {f}", o.name));
        }
    }

    pub fn summary(&self) -> String {
        match &self.witness {
            None => format!("{}: pass ({} checks)", self.name, self.checks),
            Some(w) => format!("{}: FAIL after {} checks: {w}", self.name, self.checks),
        }
    }
}
