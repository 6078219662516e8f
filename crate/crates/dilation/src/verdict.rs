//! Machine-readable verdicts with reason trails. A verdict is certified
//! exactly when every step that produced it was decided by exact arithmetic.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrailStep {
    pub step: String,
    pub detail: String,
}

impl TrailStep {
    pub fn new(step: impl Into<String>, detail: impl Into<String>) -> Self {
        TrailStep {
            step: step.into(),
            detail: detail.into(),
        }
    }
}

/// Yes/no answer with certification flag and reason trail.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub outcome: bool,
    pub certified: bool,
    pub trail: Vec<TrailStep>,
}

impl Verdict {
    pub fn new(outcome: bool, certified: bool) -> Self {
        Verdict {
            outcome,
            certified,
            trail: Vec::new(),
        }
    }

    pub fn push(&mut self, step: impl Into<String>, detail: impl Into<String>) {
        self.trail.push(TrailStep::new(step, detail));
    }

    pub fn with(mut self, step: impl Into<String>, detail: impl Into<String>) -> Self {
        self.push(step, detail);
        self
    }

    /// Deterministic single-string rendering of the trail.
    pub fn trail_text(&self) -> String {
        self.trail
            .iter()
            .map(|s| format!("{}: {}", s.step, s.detail))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

pub fn render_vector<T: std::fmt::Display>(v: &[T]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(", "))
}
