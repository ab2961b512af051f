use serde::Serialize;

/// Outcome of one verification suite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub checked: usize,
    pub passed: bool,
    /// First counterexample, if any.
    pub counterexample: Option<String>,
}

impl Check {
    pub fn new(name: &str) -> Check {
        Check {
            name: name.to_string(),
            checked: 0,
            passed: true,
            counterexample: None,
        }
    }

    pub fn count(&mut self) {
        self.checked += 1;
    }

    /// Records a failure; only the first counterexample is kept.
    pub fn fail(&mut self, what: String) {
        if self.passed {
            self.passed = false;
            self.counterexample = Some(what);
        }
    }

    pub fn merge(&mut self, other: Check) {
        self.checked += other.checked;
        if let Some(c) = other.counterexample {
            self.fail(c);
        }
    }
}
