use std::collections::BTreeMap;
use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::config::SuiteConfig;
use super::HarnessError;
use crate::symbolic::ClaimId;

const KEPT_MESSAGES: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescentSummary {
    pub max_depth: usize,
    pub total_steps: u64,
}

/// Counts for one property; failures fail the suite, flags do not.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub claim: Option<ClaimId>,
    pub passed: u64,
    pub failed: u64,
    pub flagged: u64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub flags: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub descent: Option<DescentSummary>,
}

impl Check {
    pub fn new(name: impl Into<String>, claim: Option<ClaimId>) -> Self {
        Check {
            name: name.into(),
            claim,
            passed: 0,
            failed: 0,
            flagged: 0,
            failures: Vec::new(),
            flags: Vec::new(),
            descent: None,
        }
    }

    pub fn pass(&mut self) {
        self.passed += 1;
    }

    pub fn fail(&mut self, message: impl Into<String>) {
        self.failed += 1;
        if self.failures.len() < KEPT_MESSAGES {
            self.failures.push(message.into());
        }
    }

    pub fn flag(&mut self, message: impl Into<String>) {
        self.flagged += 1;
        if self.flags.len() < KEPT_MESSAGES {
            self.flags.push(message.into());
        }
    }

    /// Records `ok`, with the message built only on failure.
    pub fn expect(&mut self, ok: bool, message: impl FnOnce() -> String) {
        if ok {
            self.pass()
        } else {
            self.fail(message())
        }
    }

    pub fn status(&self) -> Status {
        if self.failed == 0 {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn absorb(&mut self, other: Check) {
        self.passed += other.passed;
        self.failed += other.failed;
        self.flagged += other.flagged;
        for m in other.failures {
            if self.failures.len() < KEPT_MESSAGES {
                self.failures.push(m);
            }
        }
        for m in other.flags {
            if self.flags.len() < KEPT_MESSAGES {
                self.flags.push(m);
            }
        }
        if let Some(d) = other.descent {
            let mine = self.descent.get_or_insert_with(DescentSummary::default);
            mine.max_depth = mine.max_depth.max(d.max_depth);
            mine.total_steps += d.total_steps;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub name: String,
    pub status: Status,
    pub checks: Vec<Check>,
}

impl SuiteResult {
    pub fn new(name: &str, checks: Vec<Check>) -> Self {
        let status = if checks.iter().all(|c| c.failed == 0) { Status::Pass } else { Status::Fail };
        SuiteResult { name: name.to_string(), status, checks }
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoverageStatus {
    Pass,
    Fail,
    Missing,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverageEntry {
    pub claim: ClaimId,
    /// A published statement, as opposed to a case filled in here.
    pub published: bool,
    pub status: CoverageStatus,
    pub checks: usize,
}

/// Everything that may differ between identical runs.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Environment {
    pub version: String,
    pub os: String,
    pub arch: String,
    pub threads: usize,
    pub timings_ms: BTreeMap<String, u64>,
}

impl Environment {
    pub fn capture() -> Self {
        Environment {
            version: env!("CARGO_PKG_VERSION").to_string(),
            os: std::env::consts::OS.to_string(),
            arch: std::env::consts::ARCH.to_string(),
            threads: rayon::current_num_threads(),
            timings_ms: BTreeMap::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub seed: u64,
    pub config: SuiteConfig,
    pub status: Status,
    /// Process exit status for this report: 0 when it passes, 1 otherwise.
    pub exit_code: i32,
    pub suites: Vec<SuiteResult>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub coverage: Vec<CoverageEntry>,
    pub environment: Environment,
}

impl Report {
    pub fn suite(&self, name: &str) -> Option<&SuiteResult> {
        self.suites.iter().find(|s| s.name == name)
    }

    pub fn to_structured(&self) -> Result<String, HarnessError> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    pub fn from_structured(text: &str) -> Result<Report, HarnessError> {
        Ok(serde_json::from_str(text)?)
    }

    /// The structured form without the environment section; identical for
    /// identical configurations.
    pub fn deterministic_part(&self) -> Result<String, HarnessError> {
        let mut v = serde_json::to_value(self)?;
        if let Some(m) = v.as_object_mut() {
            m.remove("environment");
        }
        Ok(serde_json::to_string_pretty(&v)?)
    }

    /// Human-readable form: one section per claim, then the remaining checks
    /// per suite, the coverage ledger and timings.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "suite {}  seed {}  {}  exit {}",
            self.suite,
            self.seed,
            self.status.label(),
            self.exit_code
        );
        let line = |out: &mut String, c: &Check| {
            let _ = write!(out, "  {:<4} {:<44} pass {:>6}  fail {:>4}", c.status().label(), c.name, c.passed, c.failed);
            if c.flagged > 0 {
                let _ = write!(out, "  flagged {}", c.flagged);
            }
            if let Some(d) = c.descent {
                let _ = write!(out, "  depth {} steps {}", d.max_depth, d.total_steps);
            }
            out.push('\n');
            for m in c.failures.iter().chain(&c.flags) {
                let _ = writeln!(out, "         - {m}");
            }
        };

        let mut by_claim: BTreeMap<ClaimId, Vec<&Check>> = BTreeMap::new();
        for s in &self.suites {
            for c in &s.checks {
                if let Some(id) = c.claim {
                    by_claim.entry(id).or_default().push(c);
                }
            }
        }
        for (id, checks) in &by_claim {
            let ok = checks.iter().all(|c| c.failed == 0);
            let _ = writeln!(out, "\n== {id} [{}]", if ok { "PASS" } else { "FAIL" });
            for c in checks {
                line(&mut out, c);
            }
        }
        for s in &self.suites {
            let rest: Vec<&Check> = s.checks.iter().filter(|c| c.claim.is_none()).collect();
            if rest.is_empty() {
                continue;
            }
            let _ = writeln!(out, "\n== suite {} [{}]", s.name, s.status.label());
            for c in rest {
                line(&mut out, c);
            }
        }
        if !self.coverage.is_empty() {
            let _ = writeln!(out, "\n== coverage");
            for e in &self.coverage {
                let status = match e.status {
                    CoverageStatus::Pass => "PASS",
                    CoverageStatus::Fail => "FAIL",
                    CoverageStatus::Missing => "MISSING",
                };
                let kind = if e.published { "published" } else { "filled-in" };
                let _ = writeln!(out, "  {:<8} {:<28} {:<10} checks {}", status, e.claim.name(), kind, e.checks);
            }
        }
        let _ = writeln!(out, "\n== suites");
        for s in &self.suites {
            let ms = self.environment.timings_ms.get(&s.name).copied().unwrap_or(0);
            let _ = writeln!(out, "  {:<4} {:<24} {ms} ms", s.status.label(), s.name);
        }
        out
    }
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
        }
    }
}

pub(crate) fn coverage(suites: &[SuiteResult]) -> Vec<CoverageEntry> {
    ClaimId::ALL
        .iter()
        .filter(|id| !matches!(id, ClaimId::Equality | ClaimId::Distinct))
        .map(|&id| {
            let checks: Vec<&Check> = suites.iter().flat_map(|s| &s.checks).filter(|c| c.claim == Some(id)).collect();
            let status = if checks.is_empty() {
                CoverageStatus::Missing
            } else if checks.iter().any(|c| c.failed > 0) {
                CoverageStatus::Fail
            } else {
                CoverageStatus::Pass
            };
            CoverageEntry { claim: id, published: ClaimId::PUBLISHED.contains(&id), status, checks: checks.len() }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report_round_trips() {
        let r = Report {
            suite: "none".into(),
            seed: 3,
            config: SuiteConfig::default(),
            status: Status::Pass,
            exit_code: 0,
            suites: Vec::new(),
            coverage: Vec::new(),
            environment: Environment::capture(),
        };
        let text = r.to_structured().unwrap();
        assert_eq!(Report::from_structured(&text).unwrap(), r);
        assert!(r.to_table().contains("exit 0"));
    }

    #[test]
    fn check_keeps_a_few_messages() {
        let mut c = Check::new("x", None);
        for i in 0..8 {
            c.fail(format!("{i}"));
        }
        c.flag("odd");
        assert_eq!((c.failed, c.failures.len(), c.flagged), (8, 5, 1));
        assert_eq!(c.status(), Status::Fail);
        let mut d = Check::new("x", None);
        d.pass();
        d.absorb(c);
        assert_eq!((d.passed, d.failed), (1, 8));
    }
}
