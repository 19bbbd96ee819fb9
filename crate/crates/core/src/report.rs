use serde::Serialize;

/// One named check inside a [`ValidationReport`].
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed: true,
            witness: None,
        }
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed: false,
            witness: Some(witness.into()),
        }
    }
}

/// Outcome of validating an object against a list of axioms.
///
/// Failures are data, not errors: each failed check carries a witness.
#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn new(checks: Vec<Check>) -> Self {
        let passed = checks.iter().all(|c| c.passed);
        ValidationReport { passed, checks }
    }

    pub fn is_valid(&self) -> bool {
        self.passed
    }

    /// Failed checks, in order.
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}
