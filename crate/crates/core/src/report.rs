//! Shared result types for the identity checks: a count of cases run plus
//! the failures, each carrying a concrete counterexample with both sides
//! printed canonically.

/// One failed case with both sides of the disputed identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseFailure {
    pub case: String,
    pub lhs: String,
    pub rhs: String,
}

impl std::fmt::Display for CaseFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: lhs = {}, rhs = {}", self.case, self.lhs, self.rhs)
    }
}

/// Outcome of a grid or sampled check.
#[derive(Clone, Debug, Default)]
pub struct CheckOutcome {
    pub cases: usize,
    pub failures: Vec<CaseFailure>,
    /// Free-form observations worth surfacing, e.g. empirically found
    /// minimal bounds.
    pub notes: Vec<String>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn record(&mut self, case: impl Into<String>, lhs: String, rhs: String, ok: bool) {
        self.cases += 1;
        if !ok {
            self.failures.push(CaseFailure { case: case.into(), lhs, rhs });
        }
    }

    pub fn merge(&mut self, other: CheckOutcome) {
        self.cases += other.cases;
        self.failures.extend(other.failures);
        self.notes.extend(other.notes);
    }
}
