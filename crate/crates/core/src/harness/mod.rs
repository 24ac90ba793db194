//! Seeded verification suites, their reports and the claim coverage ledger.

mod config;
mod finite_suites;
mod report;
mod symbolic_suites;

use std::time::Instant;

use rayon::prelude::*;
use thiserror::Error;

pub use config::SuiteConfig;
pub use finite_suites::corpus;
pub use report::{
    Check, CoverageEntry, CoverageStatus, DescentSummary, Environment, Report, Status, SuiteResult,
};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("bad configuration: {0}")]
    Config(String),
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

type SuiteFn = fn(&SuiteConfig) -> Vec<Check>;

/// Every suite, in report order.
pub const SUITES: [(&str, SuiteFn); 9] = [
    ("paths", finite_suites::paths),
    ("finite-oracle", finite_suites::finite_oracle),
    ("nw-equivalence", finite_suites::nw_equivalence),
    ("truncation", finite_suites::truncation),
    ("lemma-certificates", symbolic_suites::lemma_certificates),
    ("simulation", symbolic_suites::simulation),
    ("survival", symbolic_suites::survival),
    ("symbolic-bounds", symbolic_suites::symbolic_bounds),
    ("no-diagonal-variant", symbolic_suites::no_diagonal_variant),
];

pub fn suite_names() -> impl Iterator<Item = &'static str> {
    SUITES.iter().map(|(n, _)| *n).chain(std::iter::once("all"))
}

/// Seed for the `index`-th draw under `label`; independent of thread
/// scheduling and of which other suites run.
pub fn sub_seed(seed: u64, label: &str, index: u64) -> u64 {
    fn mix(mut z: u64) -> u64 {
        z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }
    let mut h = mix(seed);
    for b in label.bytes() {
        h = mix(h ^ u64::from(b));
    }
    mix(h ^ index)
}

fn run_one(name: &str, f: SuiteFn, config: &SuiteConfig) -> (SuiteResult, u64) {
    let t = Instant::now();
    let result = SuiteResult::new(name, f(config));
    (result, t.elapsed().as_millis() as u64)
}

/// Runs one suite, or every suite for `"all"`; `all` also fails when a
/// published claim has no check.
pub fn run_suite(name: &str, config: &SuiteConfig) -> Result<Report, HarnessError> {
    config.validate()?;
    let selected: Vec<(&str, SuiteFn)> = if name == "all" {
        SUITES.to_vec()
    } else {
        let found = SUITES.iter().find(|(n, _)| *n == name).ok_or_else(|| HarnessError::UnknownSuite(name.into()))?;
        vec![*found]
    };
    let results: Vec<(SuiteResult, u64)> =
        selected.par_iter().map(|(n, f)| run_one(n, *f, config)).collect();
    let mut environment = Environment::capture();
    let mut suites = Vec::with_capacity(results.len());
    for (s, ms) in results {
        environment.timings_ms.insert(s.name.clone(), ms);
        suites.push(s);
    }
    let coverage = if name == "all" { report::coverage(&suites) } else { Vec::new() };
    let missing = coverage.iter().any(|e| e.published && e.status == CoverageStatus::Missing);
    let status = if missing || suites.iter().any(|s| s.status == Status::Fail) { Status::Fail } else { Status::Pass };
    Ok(Report {
        suite: name.into(),
        seed: config.seed,
        config: config.clone(),
        status,
        exit_code: status.exit_code(),
        suites,
        coverage,
        environment,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordinal::Ordinal;
    use crate::symbolic::ClaimId;

    fn quick() -> SuiteConfig {
        SuiteConfig {
            gammas: vec![Ordinal::omega()],
            tail_lengths: vec![2],
            truncation_sizes: vec![4],
            samples_per_claim: 20,
            survival_budget_max: 3,
            corpus_size: 20,
            corpus_max_vertices: 6,
            simulation_robbers: 10,
            survival_pairs: 4,
            ..SuiteConfig::default()
        }
    }

    #[test]
    fn sub_seeds_separate_labels_and_indices() {
        assert_ne!(sub_seed(0, "a", 0), sub_seed(0, "b", 0));
        assert_ne!(sub_seed(0, "a", 0), sub_seed(0, "a", 1));
        assert_ne!(sub_seed(0, "a", 0), sub_seed(1, "a", 0));
        assert_eq!(sub_seed(3, "x", 9), sub_seed(3, "x", 9));
    }

    #[test]
    fn unknown_suite_is_an_error() {
        assert!(matches!(run_suite("nope", &quick()), Err(HarnessError::UnknownSuite(_))));
    }

    #[test]
    fn finite_suites_pass() {
        for name in ["paths", "finite-oracle", "nw-equivalence", "truncation"] {
            let r = run_suite(name, &quick()).unwrap();
            assert_eq!(r.status, Status::Pass, "{}", r.to_table());
        }
    }

    #[test]
    fn all_is_deterministic_and_round_trips() {
        let c = quick();
        let a = run_suite("all", &c).unwrap();
        let b = run_suite("all", &c).unwrap();
        assert_eq!(a.deterministic_part().unwrap(), b.deterministic_part().unwrap());
        let back = Report::from_structured(&a.to_structured().unwrap()).unwrap();
        assert_eq!(back, a);
        assert!(a.coverage.iter().all(|e| e.status != CoverageStatus::Missing), "{}", a.to_table());
        let cov = |id| a.coverage.iter().find(|e| e.claim == id).unwrap().status;
        assert_eq!(cov(ClaimId::IsolatedCop), CoverageStatus::Pass);
        assert_eq!(cov(ClaimId::LimitRho), CoverageStatus::Fail);
        assert_eq!(cov(ClaimId::TailPair), CoverageStatus::Pass);
    }

    #[test]
    fn stalled_witnesses_are_caught_at_the_first_step() {
        let r = run_suite("lemma-certificates", &quick()).unwrap();
        let c = r.suite("lemma-certificates").unwrap().check("mutation-caught @ w").unwrap();
        assert_eq!((c.failed, c.passed), (0, 60));
    }
}
