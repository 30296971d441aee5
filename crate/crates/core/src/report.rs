//! Verification reports shared by all suites.

use std::time::Instant;

use serde::Serialize;

/// Outcome of one verification check.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub check: String,
    pub n: u32,
    pub passed: bool,
    pub witnesses: Vec<String>,
    pub wall_ms: u128,
}

impl Report {
    pub fn new(check: &str, n: u32) -> Report {
        Report {
            check: check.to_string(),
            n,
            passed: true,
            witnesses: Vec::new(),
            wall_ms: 0,
        }
    }

    pub fn fail(&mut self, witness: String) {
        self.passed = false;
        self.witnesses.push(witness);
    }

    pub fn finish(mut self, start: Instant) -> Report {
        self.wall_ms = start.elapsed().as_millis();
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialization")
    }
}
