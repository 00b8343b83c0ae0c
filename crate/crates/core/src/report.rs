//! Residual reports: one entry per checked identity, serializable to JSON.

use serde::{Deserialize, Serialize};

use crate::error::Result;

pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// How an entry participates in the overall verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EntryKind {
    /// Must hold on every geometry in scope.
    Identity,
    /// Records whether a theorem premise (or a classification property) holds;
    /// a false hypothesis is information, not a failure.
    Hypothesis,
    /// Equality of several boolean verdicts (equivalence theorems).
    Agreement,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Entry {
    pub check_id: String,
    pub paper_anchor: String,
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub not_applicable: bool,
    pub kind: EntryKind,
    pub notes: String,
}

impl Entry {
    /// Counts against the overall verdict when it fails.
    pub fn is_blocking(&self) -> bool {
        !self.not_applicable && self.kind != EntryKind::Hypothesis
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub geometry_id: String,
    pub entries: Vec<Entry>,
}

impl VerificationReport {
    pub fn new(geometry_id: impl Into<String>) -> Self {
        VerificationReport {
            schema_version: REPORT_SCHEMA_VERSION,
            geometry_id: geometry_id.into(),
            entries: Vec::new(),
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn push(&mut self, id: &str, anchor: &str, residual: f64, tol: f64, kind: EntryKind, na: bool, notes: String) {
        // NaN and infinities become f64::MAX: failing, but still valid JSON
        let residual = if residual.is_finite() { residual.abs() } else { f64::MAX };
        self.entries.push(Entry {
            check_id: id.to_string(),
            paper_anchor: anchor.to_string(),
            residual,
            tolerance: tol,
            passed: residual <= tol,
            not_applicable: na,
            kind,
            notes,
        });
    }

    pub fn identity(&mut self, id: &str, anchor: &str, residual: f64, tol: f64) -> bool {
        self.push(id, anchor, residual, tol, EntryKind::Identity, false, String::new());
        self.last_passed()
    }

    pub fn identity_with_notes(
        &mut self,
        id: &str,
        anchor: &str,
        residual: f64,
        tol: f64,
        notes: impl Into<String>,
    ) -> bool {
        self.push(id, anchor, residual, tol, EntryKind::Identity, false, notes.into());
        self.last_passed()
    }

    pub fn hypothesis(&mut self, id: &str, anchor: &str, residual: f64, tol: f64) -> bool {
        self.push(id, anchor, residual, tol, EntryKind::Hypothesis, false, String::new());
        self.last_passed()
    }

    /// Passes iff all verdicts are equal; residual 0 or 1.
    pub fn agreement(&mut self, id: &str, anchor: &str, verdicts: &[bool], tol: f64) -> bool {
        let agree = verdicts.windows(2).all(|w| w[0] == w[1]);
        let notes = format!(
            "verdicts [{}]",
            verdicts.iter().map(|v| if *v { "true" } else { "false" }).collect::<Vec<_>>().join(", ")
        );
        self.push(id, anchor, if agree { 0.0 } else { 1.0 }, tol, EntryKind::Agreement, false, notes);
        agree
    }

    /// A conditional check whose premise failed; `premise_residual` is the
    /// residual of the failed premise so that `passed ⟺ residual ≤ tolerance`
    /// still holds.
    pub fn not_applicable(
        &mut self,
        id: &str,
        anchor: &str,
        premise_residual: f64,
        tol: f64,
        notes: impl Into<String>,
    ) {
        let r = if premise_residual.is_finite() && premise_residual > tol { premise_residual } else { f64::MAX };
        self.push(id, anchor, r, tol, EntryKind::Identity, true, notes.into());
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.entries.extend(other.entries);
    }

    fn last_passed(&self) -> bool {
        self.entries.last().is_some_and(|e| e.passed)
    }

    pub fn get(&self, check_id: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.check_id == check_id)
    }

    /// True iff every blocking entry passed.
    pub fn all_passed(&self) -> bool {
        self.entries.iter().filter(|e| e.is_blocking()).all(|e| e.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Entry> {
        self.entries.iter().filter(|e| e.is_blocking() && !e.passed)
    }

    pub fn max_blocking_residual(&self) -> f64 {
        self.entries.iter().filter(|e| e.is_blocking()).fold(0.0, |m, e| m.max(e.residual))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("geometry: {}\n", self.geometry_id);
        for e in &self.entries {
            let verdict = match (e.not_applicable, e.kind, e.passed) {
                (true, _, _) => "n/a ",
                (false, EntryKind::Hypothesis, true) => "holds",
                (false, EntryKind::Hypothesis, false) => "fails",
                (false, _, true) => "PASS",
                (false, _, false) => "FAIL",
            };
            out.push_str(&format!("{verdict:>5}  {:<40} {:>10.3e}  {}\n", e.check_id, e.residual, e.notes));
        }
        let blocking = self.entries.iter().filter(|e| e.is_blocking()).count();
        let failed = self.failures().count();
        out.push_str(&format!("{} of {} checks passed\n", blocking - failed, blocking));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdicts() {
        let mut r = VerificationReport::new("g");
        assert!(r.identity("a", "x", 1e-12, 1e-9));
        assert!(!r.hypothesis("b", "x", 0.5, 1e-9));
        assert!(r.agreement("c", "x", &[false, false], 1e-9));
        r.not_applicable("d", "x", 0.3, 1e-9, "premise fails");
        assert!(r.all_passed());
        assert!(!r.agreement("e", "x", &[true, false], 1e-9));
        assert!(!r.all_passed());
        assert_eq!(r.failures().count(), 1);
        for e in &r.entries {
            assert!(e.residual >= 0.0);
            assert_eq!(e.passed, e.residual <= e.tolerance);
        }
    }

    #[test]
    fn nan_is_a_failure() {
        let mut r = VerificationReport::new("g");
        assert!(!r.identity("nan", "x", f64::NAN, 1e-9));
    }

    #[test]
    fn json_round_trip() {
        let mut r = VerificationReport::new("g");
        r.identity("a", "x = y", 1.25e-13, 1e-9);
        r.not_applicable("b", "z", 2.0, 1e-9, "n");
        let back = VerificationReport::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        let keys: Vec<&str> = v["entries"][0].as_object().unwrap().keys().map(|k| k.as_str()).collect();
        for k in ["check_id", "paper_anchor", "residual", "tolerance", "passed", "not_applicable", "notes"] {
            assert!(keys.contains(&k), "{k}");
        }
    }
}
