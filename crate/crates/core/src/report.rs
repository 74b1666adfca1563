//! Structured results of the property suites.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// Failures kept per report; the `failed` counter stays exact.
pub const MAX_LISTED_FAILURES: usize = 50;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Failure {
    pub law: String,
    pub inputs: String,
    pub witness: String,
}

/// A direction that is measured but never asserted.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exploration {
    pub checked: usize,
    pub counterexamples: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub example: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub attempted: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub failures: Vec<Failure>,
    pub skip_reasons: BTreeMap<String, usize>,
    pub exploratory: BTreeMap<String, Exploration>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Self {
        Report {
            suite: suite.into(),
            attempted: 0,
            passed: 0,
            failed: 0,
            skipped: 0,
            failures: Vec::new(),
            skip_reasons: BTreeMap::new(),
            exploratory: BTreeMap::new(),
            notes: Vec::new(),
        }
    }

    pub fn pass(&mut self) {
        self.attempted += 1;
        self.passed += 1;
    }

    pub fn fail(&mut self, law: impl Into<String>, inputs: impl Into<String>, witness: impl Into<String>) {
        self.attempted += 1;
        self.failed += 1;
        self.failures.push(Failure {
            law: law.into(),
            inputs: inputs.into(),
            witness: witness.into(),
        });
    }

    /// Records a pass, or a failure whose description is built lazily.
    pub fn check(
        &mut self,
        law: &str,
        ok: bool,
        inputs: impl FnOnce() -> String,
        witness: impl FnOnce() -> String,
    ) {
        if ok {
            self.pass();
        } else {
            self.fail(law, inputs(), witness());
        }
    }

    pub fn skip(&mut self, reason: impl Into<String>) {
        self.attempted += 1;
        self.skipped += 1;
        *self.skip_reasons.entry(reason.into()).or_default() += 1;
    }

    pub fn explore(&mut self, law: &str, holds: bool, example: impl FnOnce() -> String) {
        let entry = self.exploratory.entry(law.to_string()).or_default();
        entry.checked += 1;
        if !holds {
            entry.counterexamples += 1;
            if entry.example.is_none() {
                entry.example = Some(example());
            }
        }
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn merge(&mut self, other: Report) {
        self.attempted += other.attempted;
        self.passed += other.passed;
        self.failed += other.failed;
        self.skipped += other.skipped;
        self.failures.extend(other.failures);
        for (k, v) in other.skip_reasons {
            *self.skip_reasons.entry(k).or_default() += v;
        }
        for (k, v) in other.exploratory {
            let entry = self.exploratory.entry(k).or_default();
            entry.checked += v.checked;
            entry.counterexamples += v.counterexamples;
            if entry.example.is_none() {
                entry.example = v.example;
            }
        }
        for note in other.notes {
            if !self.notes.contains(&note) {
                self.notes.push(note);
            }
        }
    }

    /// Sorts failures canonically and caps the listed ones.
    pub fn finish(mut self) -> Self {
        self.failures.sort();
        self.failures.dedup();
        self.failures.truncate(MAX_LISTED_FAILURES);
        self
    }

    pub fn is_success(&self) -> bool {
        self.failed == 0
    }

    pub fn is_consistent(&self) -> bool {
        self.passed + self.failed + self.skipped == self.attempted
    }

    pub fn failures_for(&self, law: &str) -> usize {
        self.failures.iter().filter(|f| f.law == law).count()
    }
}
