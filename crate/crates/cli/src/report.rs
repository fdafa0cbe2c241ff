//! Command reports: JSON for machines, plain text for people.

use std::fmt::Write as _;

use mcred::{CheckOutcome, ValidationReport};
use serde::Serialize;
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InputDigest {
    pub sha256: String,
    pub bytes: usize,
}

impl InputDigest {
    pub fn of(bytes: &[u8]) -> Self {
        Self { sha256: hex::encode(Sha256::digest(bytes)), bytes: bytes.len() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub input: InputDigest,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub verdict: Verdict,
    pub checks: Vec<CheckOutcome>,
    pub data: Map<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl Report {
    pub fn new(command: &str, input: InputDigest) -> Self {
        Self {
            schema_version: REPORT_SCHEMA_VERSION,
            command: command.to_string(),
            input,
            seed: None,
            verdict: Verdict::Pass,
            checks: Vec::new(),
            data: Map::new(),
            timing_ms: None,
        }
    }

    pub fn add_checks(&mut self, r: ValidationReport) {
        self.checks.extend(r.checks);
        self.update_verdict();
    }

    /// Adds checks under `prefix.name`, for reports that combine several
    /// structures with overlapping check names.
    pub fn add_checks_prefixed(&mut self, prefix: &str, mut r: ValidationReport) {
        for c in &mut r.checks {
            c.name = format!("{prefix}.{}", c.name);
        }
        self.add_checks(r);
    }

    pub fn check(&mut self, name: &str, cases: u64, witness: Option<String>) -> &mut CheckOutcome {
        let mut r = ValidationReport::new();
        r.push(name, cases, witness);
        self.add_checks(r);
        self.checks.last_mut().expect("just pushed")
    }

    pub fn set(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("report data serializes");
        self.data.insert(key.to_string(), v);
    }

    fn update_verdict(&mut self) {
        self.verdict = if self.checks.iter().all(|c| c.passed) { Verdict::Pass } else { Verdict::Fail };
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let verdict = if self.passed() { "pass" } else { "FAIL" };
        let _ = writeln!(out, "{}: {verdict}", self.command);
        let _ = writeln!(out, "input sha256 {}", self.input.sha256);
        if let Some(seed) = self.seed {
            let _ = writeln!(out, "seed {seed}");
        }
        let checks = ValidationReport { checks: self.checks.clone() };
        out.push_str(&checks.to_string());
        for (k, v) in &self.data {
            match v {
                Value::String(s) => {
                    let _ = writeln!(out, "{k}: {s}");
                }
                _ => {
                    let _ = writeln!(out, "{k}: {v}");
                }
            }
        }
        if let Some(ms) = self.timing_ms {
            let _ = writeln!(out, "time {ms} ms");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_follows_checks() {
        let mut r = Report::new("validate", InputDigest::of(b"{}"));
        assert!(r.passed());
        r.check("a", 1, None);
        assert!(r.passed());
        r.check("b", 3, Some("x = 1".into()));
        assert!(!r.passed());
        let text = r.to_text();
        assert!(text.contains("FAIL b (3 cases): x = 1"), "{text}");
    }

    #[test]
    fn digest_is_sha256() {
        let d = InputDigest::of(b"abc");
        assert_eq!(d.sha256, "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    }

    #[test]
    fn json_omits_timing_by_default() {
        let r = Report::new("mc", InputDigest::of(b""));
        let j = r.to_json();
        assert!(!j.contains("timing_ms"));
        assert!(j.contains("\"verdict\": \"pass\""));
    }
}
