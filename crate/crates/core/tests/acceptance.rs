//! Acceptance criteria 1–10, one PASS/FAIL line each. Runs as a plain binary
//! so every line is printed whatever the outcome; exits non-zero if any
//! criterion fails. Tolerances and time limits are pinned below.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use copwin::finite::{eta_all, naive_game_value, EtaValue, FiniteGraph};
use copwin::gen::{self, TruncationSpec};
use copwin::harness::{corpus, run_suite, Check, Report, Status, SuiteConfig};
use copwin::symbolic::ClaimId;

const PATHS_LIMIT: Duration = Duration::from_secs(1);
const ORACLE_LIMIT: Duration = Duration::from_secs(60);
const EXACTNESS_LIMIT_MS: u64 = 5_000;
const AUDIT_LIMIT_MS: u64 = 120_000;
const ROUND_CAP: usize = 10_000;
const MAX_BUDGET: u64 = 20;
const SAMPLES: u64 = 1000;
const ROBBERS: u64 = 500;
const SURVIVAL_PAIRS: u64 = 100;
const COP_POLICIES: u64 = 2;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn first_failure(checks: &[&Check]) -> String {
    checks
        .iter()
        .find(|c| c.failed > 0)
        .map(|c| format!("; first failing check {}: {}", c.name, c.failures.first().cloned().unwrap_or_default()))
        .unwrap_or_default()
}

fn criterion_1() -> Outcome {
    let t = Instant::now();
    let mut bad = Vec::new();
    for n in 1..=10u32 {
        let k = 2 * n as usize + 1;
        let got = eta_all(&gen::path(k)).expect("path solves").capture_time;
        if got != EtaValue::Steps(n) {
            bad.push(format!("P{k}: {got}"));
        }
    }
    let el = t.elapsed();
    outcome(bad.is_empty() && el < PATHS_LIMIT, format!("P3..P21 exact, {bad:?}, {el:?} (limit {PATHS_LIMIT:?})"))
}

fn criterion_2(graphs: &[FiniteGraph]) -> Outcome {
    let t = Instant::now();
    let (mut pairs, mut robber_wins, mut mismatches) = (0, 0, 0);
    for g in graphs {
        let table = eta_all(g).expect("corpus graph solves");
        for u in 0..g.vertex_count() {
            for v in 0..g.vertex_count() {
                let want = naive_game_value(g, u, v, 8).expect("corpus graphs are small");
                pairs += 1;
                robber_wins += usize::from(want == EtaValue::RobberWins);
                mismatches += usize::from(table.get(u, v) != want);
            }
        }
    }
    let el = t.elapsed();
    let ok = graphs.len() == 200 && mismatches == 0 && robber_wins > 0 && el < ORACLE_LIMIT;
    outcome(
        ok,
        format!("{} graphs, {pairs} pairs, {robber_wins} robber-win, {mismatches} mismatches, {el:?} (limit {ORACLE_LIMIT:?})", graphs.len()),
    )
}

/// Repeatedly deletes a dominated vertex; dismantlable iff one vertex remains.
fn dismantlable_oracle(g: &FiniteGraph) -> bool {
    let mut alive: Vec<usize> = (0..g.vertex_count()).collect();
    let closed = |x: usize, y: usize| x == y || g.adjacent(x, y);
    while alive.len() > 1 {
        let found = alive.iter().enumerate().find_map(|(i, &x)| {
            alive.iter().any(|&y| y != x && alive.iter().all(|&z| !closed(x, z) || closed(y, z))).then_some(i)
        });
        match found {
            Some(i) => {
                alive.remove(i);
            }
            None => return false,
        }
    }
    true
}

fn criterion_3(graphs: &[FiniteGraph]) -> Outcome {
    let mut all: Vec<FiniteGraph> = graphs.to_vec();
    all.extend((3..=8).map(gen::cycle));
    all.extend((1..=6).map(gen::complete));
    let mut mismatches = 0;
    for g in &all {
        let t = eta_all(g).expect("solves");
        let n = g.vertex_count();
        let cop_win = (0..n).any(|v| (0..n).all(|u| t.get(u, v).is_finite()));
        mismatches += usize::from(cop_win != dismantlable_oracle(g) || cop_win != t.is_cop_win());
    }
    outcome(mismatches == 0, format!("{} graphs, {mismatches} mismatches", all.len()))
}

/// Recomputes `1 + max_x min_y values[x][y]` for every finite pair.
fn recursion_violations_oracle(g: &FiniteGraph) -> usize {
    let t = eta_all(g).expect("solves");
    let n = g.vertex_count();
    let closed: Vec<Vec<usize>> = (0..n).map(|v| (0..n).filter(|&w| w == v || g.adjacent(v, w)).collect()).collect();
    let mut bad = 0;
    for u in 0..n {
        for v in 0..n {
            let EtaValue::Steps(k) = t.get(u, v) else { continue };
            if u == v {
                continue;
            }
            let worst = closed[u].iter().map(|&x| closed[v].iter().map(|&y| t.get(x, y)).min().unwrap()).max().unwrap();
            if worst.steps().map(|w| w + 1) != Some(k) {
                bad += 1;
            }
        }
    }
    bad
}

fn criterion_4(graphs: &[FiniteGraph]) -> Outcome {
    let mut total = 0;
    let mut count = 0;
    for g in graphs {
        total += recursion_violations_oracle(g);
        count += 1;
    }
    for size in [4, 6, 8] {
        for diag in [true, false] {
            for tail in [0, 2] {
                let g = gen::truncation(&TruncationSpec::new(size, tail, diag)).expect("valid truncation");
                total += recursion_violations_oracle(&g);
                count += 1;
            }
        }
    }
    outcome(total == 0, format!("{count} graphs, {total} violations"))
}

fn checks<'a>(report: &'a Report, suite: &str, keep: impl Fn(&Check) -> bool) -> Vec<&'a Check> {
    report.suite(suite).map(|s| s.checks.iter().filter(|c| keep(c)).collect()).unwrap_or_default()
}

fn timing(report: &Report, suite: &str) -> u64 {
    report.environment.timings_ms.get(suite).copied().unwrap_or(u64::MAX)
}

fn summarize(cs: &[&Check]) -> (u64, u64) {
    cs.iter().fold((0, 0), |(p, f), c| (p + c.passed, f + c.failed))
}

fn criterion_5(report: &Report) -> Outcome {
    let wanted = [ClaimId::DiagonalRobber, ClaimId::LimitRho, ClaimId::TailPair, ClaimId::SuccessorRho];
    let cs = checks(report, "symbolic-bounds", |c| c.claim.is_some_and(|id| wanted.contains(&id)));
    let (passed, failed) = summarize(&cs);
    let ms = timing(report, "symbolic-bounds");
    let expected = 4 * (50 + 1 + 3 + 3);
    let ok = failed == 0 && passed == expected && ms < EXACTNESS_LIMIT_MS;
    outcome(
        ok,
        format!("{passed}/{expected} exact, {failed} off, {ms} ms (limit {EXACTNESS_LIMIT_MS} ms){}", first_failure(&cs)),
    )
}

fn criterion_6(report: &Report) -> Outcome {
    let audits = checks(report, "lemma-certificates", |c| c.descent.is_some());
    let mutation = checks(report, "lemma-certificates", |c| c.name.starts_with("mutation-caught"));
    let (passed, failed) = summarize(&audits);
    let (caught, missed) = summarize(&mutation);
    let ms = timing(report, "lemma-certificates");
    let families_ok = audits.len() == 4 * 14 && audits.iter().all(|c| c.passed + c.failed == SAMPLES);
    let depth = audits.iter().filter_map(|c| c.descent).map(|d| d.max_depth).max().unwrap_or(0);
    let ok = families_ok && failed == 0 && missed == 0 && caught > 0 && ms < AUDIT_LIMIT_MS;
    outcome(
        ok,
        format!(
            "{} audited families, {passed} passed, {failed} violations, max depth {depth}, mutation caught {caught}/{}, {ms} ms (limit {AUDIT_LIMIT_MS} ms){}",
            audits.len(),
            caught + missed,
            first_failure(&audits)
        ),
    )
}

fn capture_checks<'a>(report: &'a Report, suite: &str, variant: bool) -> Vec<&'a Check> {
    checks(report, suite, |c| {
        c.name.starts_with("constructive-capture") && !c.name.contains('+') && c.name.contains("no-diagonal") == variant
    })
}

fn criterion_7(report: &Report) -> Outcome {
    let cs = capture_checks(report, "simulation", false);
    let (passed, failed) = summarize(&cs);
    let ok = report.config.simulation_round_cap == ROUND_CAP
        && cs.len() == 4
        && cs.iter().all(|c| c.passed + c.failed == ROBBERS)
        && failed == 0;
    outcome(ok, format!("{passed} captured with decreasing chase, {failed} failures, cap {ROUND_CAP}{}", first_failure(&cs)))
}

fn criterion_8(report: &Report) -> Outcome {
    let cs = checks(report, "survival", |c| c.name.starts_with("budget-survival") && !c.name.contains('+'));
    let (passed, failed) = summarize(&cs);
    let ok = report.config.survival_budget_max == MAX_BUDGET
        && cs.len() == 4
        && cs.iter().all(|c| c.passed + c.failed == COP_POLICIES * MAX_BUDGET * SURVIVAL_PAIRS)
        && failed == 0;
    outcome(
        ok,
        format!("k = 1..{MAX_BUDGET}, {passed} (start pair, cop policy) games survived, {failed} early captures{}", first_failure(&cs)),
    )
}

fn criterion_9(report: &Report) -> Outcome {
    let suite = "no-diagonal-variant";
    let rho = checks(report, suite, |c| c.claim == Some(ClaimId::NoDiagonalRho) && c.name.starts_with("no-diagonal-rho"));
    let axis = checks(report, suite, |c| c.claim == Some(ClaimId::NoDiagonalAxisCops));
    let capture = capture_checks(report, suite, true);
    let all: Vec<&Check> = rho.iter().chain(&axis).chain(&capture).copied().collect();
    let (passed, failed) = summarize(&all);
    let ok = rho.len() == 4
        && axis.len() == 8
        && axis.iter().all(|c| c.passed + c.failed == SAMPLES)
        && capture.len() == 4
        && failed == 0;
    outcome(ok, format!("rho, axis-cop audits and capture without diagonal edges: {passed} passed, {failed} failed{}", first_failure(&all)))
}

fn criterion_10(first: &Report, config: &SuiteConfig) -> Outcome {
    let second = run_suite("all", config).expect("suite runs");
    let (a, b) = (first.deterministic_part().expect("serializes"), second.deterministic_part().expect("serializes"));
    outcome(a == b, format!("two seed-0 runs, {} bytes each, identical: {}", a.len(), a == b))
}

fn main() -> ExitCode {
    let mut failed = Vec::new();
    let mut report_line = |n: usize, o: Outcome| {
        println!("criterion {n:>2}: {} — {}", if o.ok { "PASS" } else { "FAIL" }, o.detail);
        if !o.ok {
            failed.push(n);
        }
    };

    let config = SuiteConfig::default();
    assert_eq!(config.seed, 0);
    let graphs = corpus(&config);
    assert!(graphs.iter().all(|g| g.vertex_count() <= 8));

    report_line(1, criterion_1());
    report_line(2, criterion_2(&graphs));
    report_line(3, criterion_3(&graphs));
    report_line(4, criterion_4(&graphs));

    let report = run_suite("all", &config).expect("suite runs");
    report_line(5, criterion_5(&report));
    report_line(6, criterion_6(&report));
    report_line(7, criterion_7(&report));
    report_line(8, criterion_8(&report));
    report_line(9, criterion_9(&report));
    report_line(10, criterion_10(&report, &config));

    println!("suite all: {}", match report.status {
        Status::Pass => "PASS",
        Status::Fail => "FAIL",
    });
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("failed criteria: {failed:?}");
        ExitCode::FAILURE
    }
}
