//! Machine-readable verdicts for verified identities.

use serde::Serialize;
use std::collections::BTreeMap;

/// Outcome of one identity check. `pass == true` implies no witness.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub claim: String,
    pub n: usize,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub parameters: BTreeMap<String, String>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub derived_scalar: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub claimed_scalar: Option<String>,
    pub millis: u128,
}

/// Run a check and record its wall-clock duration.
pub fn timed(f: impl FnOnce() -> Report) -> Report {
    let start = std::time::Instant::now();
    let mut report = f();
    report.millis = start.elapsed().as_millis();
    report
}

/// Location and value of one nonzero discrepancy.
#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub location: String,
    pub value: String,
}

impl Report {
    pub fn pass(claim: &str, n: usize) -> Self {
        Self {
            claim: claim.to_string(),
            n,
            parameters: BTreeMap::new(),
            pass: true,
            skipped: None,
            witness: None,
            derived_scalar: None,
            claimed_scalar: None,
            millis: 0,
        }
    }

    pub fn fail(claim: &str, n: usize, location: &str, value: &str) -> Self {
        Self {
            claim: claim.to_string(),
            n,
            parameters: BTreeMap::new(),
            pass: false,
            skipped: None,
            witness: Some(Witness {
                location: location.to_string(),
                value: value.to_string(),
            }),
            derived_scalar: None,
            claimed_scalar: None,
            millis: 0,
        }
    }

    pub fn skipped(claim: &str, n: usize, reason: &str) -> Self {
        Self {
            claim: claim.to_string(),
            n,
            parameters: BTreeMap::new(),
            pass: true,
            skipped: Some(reason.to_string()),
            witness: None,
            derived_scalar: None,
            claimed_scalar: None,
            millis: 0,
        }
    }

    pub fn with_param(mut self, key: &str, value: impl ToString) -> Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    pub fn with_scalars(mut self, derived: &str, claimed: &str) -> Self {
        self.derived_scalar = Some(derived.to_string());
        self.claimed_scalar = Some(claimed.to_string());
        self
    }

    /// Combine sub-checks: passes iff all pass; first failure's witness wins.
    pub fn merge(claim: &str, n: usize, parts: Vec<Report>) -> Self {
        let mut out = Report::pass(claim, n);
        for p in parts {
            if !p.pass && out.pass {
                out.pass = false;
                out.witness = p.witness.clone();
            }
        }
        out
    }
}
