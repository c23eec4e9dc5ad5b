use std::fmt;

/// One problem (or remark) found by a well-formedness check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Finding {
    /// What was checked: a rule, a function body, an assertion.
    pub subject: String,
    pub message: String,
    /// Offending symbol, when the finding is about vocabulary.
    pub symbol: Option<String>,
}

/// Outcome of a check. A failing check is data, not an error.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WellFormedReport {
    pub violations: Vec<Finding>,
    pub notes: Vec<Finding>,
}

impl WellFormedReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violate(&mut self, subject: impl Into<String>, message: impl Into<String>, symbol: Option<&str>) {
        self.violations.push(Finding {
            subject: subject.into(),
            message: message.into(),
            symbol: symbol.map(str::to_string),
        });
    }

    pub fn note(&mut self, subject: impl Into<String>, message: impl Into<String>) {
        self.notes.push(Finding { subject: subject.into(), message: message.into(), symbol: None });
    }

    pub fn merge(&mut self, other: WellFormedReport) {
        self.violations.extend(other.violations);
        self.notes.extend(other.notes);
    }

    pub fn offending_symbols(&self) -> Vec<&str> {
        self.violations.iter().filter_map(|f| f.symbol.as_deref()).collect()
    }
}

impl fmt::Display for WellFormedReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            writeln!(f, "ok")?;
        }
        for v in &self.violations {
            writeln!(f, "violation: {}: {}", v.subject, v.message)?;
        }
        for n in &self.notes {
            writeln!(f, "note: {}: {}", n.subject, n.message)?;
        }
        Ok(())
    }
}
