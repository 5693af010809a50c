//! Per-check verdicts and the report assembled from them.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Pass,
    Fail,
    /// The tested statement holds trivially (the evaluated value is zero).
    Vacuous,
    NotApplicable,
    /// Advisory only; never decides the outcome.
    Warning,
}

impl Verdict {
    pub fn is_failure(self) -> bool {
        self == Verdict::Fail
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evidence {
    pub name: String,
    pub value: String,
}

impl Evidence {
    pub fn new(name: impl Into<String>, value: impl ToString) -> Self {
        Evidence {
            name: name.into(),
            value: value.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub verdict: Verdict,
    pub evidence: Vec<Evidence>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CheckResult {
    pub fn new(name: impl Into<String>, verdict: Verdict) -> Self {
        CheckResult {
            name: name.into(),
            verdict,
            evidence: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn with(mut self, name: impl Into<String>, value: impl ToString) -> Self {
        self.evidence.push(Evidence::new(name, value));
        self
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn evidence_value(&self, name: &str) -> Option<&str> {
        self.evidence
            .iter()
            .find(|e| e.name == name)
            .map(|e| e.value.as_str())
    }
}

/// Anything that can be summarized as one line of a report.
pub trait AsCheck {
    fn as_check(&self) -> CheckResult;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Conclusion {
    /// Every check passed or held vacuously.
    Admissible,
    /// At least one hard check failed.
    Rejected,
}

/// Input echo plus all check lines.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub input: serde_json::Value,
    pub checks: Vec<CheckResult>,
    pub conclusion: Conclusion,
}

impl VerdictReport {
    pub fn new(input: serde_json::Value, checks: Vec<CheckResult>) -> Self {
        let conclusion = if checks.iter().any(|c| c.verdict.is_failure()) {
            Conclusion::Rejected
        } else {
            Conclusion::Admissible
        };
        VerdictReport {
            input,
            checks,
            conclusion,
        }
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Plain-text rendering, one line per check.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let ev: Vec<String> = c
                .evidence
                .iter()
                .map(|e| format!("{}={}", e.name, e.value))
                .collect();
            out.push_str(&format!(
                "{:<28} {:<15} {}\n",
                c.name,
                format!("{:?}", c.verdict),
                ev.join(" ")
            ));
            for n in &c.notes {
                out.push_str(&format!("{:<28} note: {n}\n", ""));
            }
        }
        out.push_str(&format!("conclusion: {:?}\n", self.conclusion));
        out
    }
}

/// Outcome of a check that can only rule a polynomial out.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Consistency {
    Consistent,
    /// The polynomial cannot occur.
    Contradiction,
    /// Hypotheses not met.
    NotApplicable,
}

impl Consistency {
    pub fn verdict(self) -> Verdict {
        match self {
            Consistency::Consistent => Verdict::Pass,
            Consistency::Contradiction => Verdict::Fail,
            Consistency::NotApplicable => Verdict::NotApplicable,
        }
    }
}
