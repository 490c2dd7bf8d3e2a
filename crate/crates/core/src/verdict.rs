use serde::Serialize;

use crate::order::Carrier;

/// Outcome of a clause check. A failing verdict always names the violated
/// clause and carries the assignment at which it was observed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub pass: bool,
    pub clause: Option<String>,
    pub witness: Vec<usize>,
    pub detail: String,
}

impl Verdict {
    pub fn pass(detail: impl Into<String>) -> Verdict {
        Verdict { pass: true, clause: None, witness: Vec::new(), detail: detail.into() }
    }

    pub fn fail(clause: impl Into<String>, witness: Vec<usize>, detail: impl Into<String>) -> Verdict {
        Verdict { pass: false, clause: Some(clause.into()), witness, detail: detail.into() }
    }

    pub fn is_pass(&self) -> bool {
        self.pass
    }

    pub fn labeled_witness(&self, carrier: &Carrier) -> Vec<String> {
        self.witness.iter().map(|&x| carrier.label(x).to_string()).collect()
    }

    /// Conjunction: the first failing verdict wins.
    pub fn and_then(self, next: impl FnOnce() -> Verdict) -> Verdict {
        if self.pass {
            next()
        } else {
            self
        }
    }
}
