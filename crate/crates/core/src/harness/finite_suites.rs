//! Suites over finite graphs: oracle and dismantlability cross-checks, paths,
//! and truncations of the grid family.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::config::SuiteConfig;
use super::report::Check;
use super::sub_seed;
use crate::finite::{
    dismantle, eta_all, naive_game_values, optimal_cop_policy, policy_violations, recursion_violations, EtaValue,
    FiniteGraph, DEFAULT_MAX_VERTICES,
};
use crate::gen::{self, TruncationSpec};
use crate::symbolic::ClaimId;

/// Seeded random graphs with at most `corpus_max_vertices` vertices.
pub fn corpus(config: &SuiteConfig) -> Vec<FiniteGraph> {
    (0..config.corpus_size)
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(config.seed, "corpus", i as u64));
            let k = rng.gen_range(1..=config.corpus_max_vertices);
            let p = rng.gen_range(0.15..0.85);
            gen::random(k, p, rng.gen())
        })
        .collect()
}

pub fn finite_oracle(config: &SuiteConfig) -> Vec<Check> {
    let graphs = corpus(config);
    let per_graph: Vec<[Check; 4]> = graphs
        .par_iter()
        .enumerate()
        .map(|(i, g)| {
            let mut oracle = Check::new("eta-all-matches-naive-oracle", None);
            let mut domination = Check::new("domination-characterization", None);
            let mut policy = Check::new("optimal-policy-descends", None);
            let mut robber_wins = Check::new("robber-win-entries-agree", None);
            let table = match eta_all(g) {
                Ok(t) => t,
                Err(e) => {
                    oracle.fail(format!("graph {i}: {e}"));
                    return [oracle, domination, policy, robber_wins];
                }
            };
            let naive = match naive_game_values(g, DEFAULT_MAX_VERTICES.max(g.vertex_count())) {
                Ok(n) => n,
                Err(e) => {
                    oracle.fail(format!("graph {i}: {e}"));
                    return [oracle, domination, policy, robber_wins];
                }
            };
            let n = g.vertex_count();
            for u in 0..n {
                for v in 0..n {
                    let (a, b) = (table.get(u, v), naive.get(u, v));
                    oracle.expect(a == b, || format!("graph {i} ({u},{v}): eta_all {a}, oracle {b}"));
                    if a == EtaValue::RobberWins || b == EtaValue::RobberWins {
                        robber_wins.expect(a == b, || format!("graph {i} ({u},{v})"));
                    }
                    let dom = u != v && g.dominates(v, u).unwrap_or(false);
                    domination.expect(dom == (a == EtaValue::Steps(1)), || {
                        format!("graph {i} ({u},{v}): value {a}, dominated {dom}")
                    });
                }
            }
            match optimal_cop_policy(g, &table) {
                Ok(p) => {
                    let bad = policy_violations(g, &table, &p);
                    policy.expect(bad.is_empty(), || format!("graph {i}: {} violations, first {:?}", bad.len(), bad[0]));
                }
                Err(e) => policy.fail(format!("graph {i}: {e}")),
            }
            [oracle, domination, policy, robber_wins]
        })
        .collect();
    merge(per_graph)
}

fn merge<const K: usize>(rows: Vec<[Check; K]>) -> Vec<Check> {
    let mut it = rows.into_iter();
    let Some(first) = it.next() else { return Vec::new() };
    let mut acc: Vec<Check> = first.into();
    for row in it {
        for (a, c) in acc.iter_mut().zip(row) {
            a.absorb(c);
        }
    }
    acc
}

pub fn nw_equivalence(config: &SuiteConfig) -> Vec<Check> {
    let mut graphs: Vec<(String, FiniteGraph)> =
        corpus(config).into_iter().enumerate().map(|(i, g)| (format!("corpus {i}"), g)).collect();
    graphs.extend((3..=8).map(|k| (format!("C{k}"), gen::cycle(k))));
    graphs.extend((1..=6).map(|k| (format!("K{k}"), gen::complete(k))));
    let mut check = Check::new("cop-win-iff-dismantlable", None);
    let results: Vec<Result<(bool, bool), String>> = graphs
        .par_iter()
        .map(|(name, g)| {
            let t = eta_all(g).map_err(|e| format!("{name}: {e}"))?;
            let d = dismantle(g).map_err(|e| format!("{name}: {e}"))?;
            Ok((t.is_cop_win(), d.is_dismantlable()))
        })
        .collect();
    for ((name, _), r) in graphs.iter().zip(results) {
        match r {
            Ok((a, b)) => check.expect(a == b, || format!("{name}: cop-win {a}, dismantlable {b}")),
            Err(e) => check.fail(e),
        }
    }
    let mut cycles = Check::new("cycles-c4-and-up-not-dismantlable", None);
    for k in 4..=8 {
        let ok = dismantle(&gen::cycle(k)).map(|d| !d.is_dismantlable()).unwrap_or(false);
        cycles.expect(ok, || format!("C{k}"));
    }
    vec![check, cycles]
}

pub fn paths(_: &SuiteConfig) -> Vec<Check> {
    let mut check = Check::new("path-capture-time", None);
    for n in 1..=10u32 {
        let k = 2 * n as usize + 1;
        match eta_all(&gen::path(k)) {
            Ok(t) => check.expect(t.capture_time == EtaValue::Steps(n), || {
                format!("P{k}: capture time {}, expected {n}", t.capture_time)
            }),
            Err(e) => check.fail(format!("P{k}: {e}")),
        }
    }
    vec![check]
}

/// Truncations `T_N`: recursion identity, the oracle on `T_4`, the tail
/// chase value, and flags for robber-win truncations and small values.
pub fn truncation(config: &SuiteConfig) -> Vec<Check> {
    let mut specs = Vec::new();
    for &size in &config.truncation_sizes {
        for diag in [true, false] {
            for tail in [0, 2] {
                specs.push(TruncationSpec::new(size, tail, diag));
            }
        }
    }
    let rows: Vec<[Check; 5]> = specs
        .par_iter()
        .map(|spec| {
            let name = format!("T{} tail {} {}", spec.grid_size, spec.tail_length, if spec.diagonal_edges { "diag" } else { "no-diag" });
            let mut identity = Check::new("recursion-identity-truncations", None);
            let mut oracle = Check::new("truncation-matches-naive-oracle", None);
            let mut cop_win = Check::new("truncation-cop-win", None);
            let mut min_coord = Check::new("truncation-min-coordinate-heuristic", None);
            let mut chase = Check::new("tail-chase-value-in-truncations", Some(ClaimId::TailChase));
            let g = match gen::truncation(spec) {
                Ok(g) => g,
                Err(e) => {
                    identity.fail(format!("{name}: {e}"));
                    return [identity, oracle, cop_win, min_coord, chase];
                }
            };
            let t = match eta_all(&g) {
                Ok(t) => t,
                Err(e) => {
                    identity.fail(format!("{name}: {e}"));
                    return [identity, oracle, cop_win, min_coord, chase];
                }
            };
            let bad = recursion_violations(&g, &t);
            identity.expect(bad.is_empty(), || format!("{name}: {} violations, first {:?}", bad.len(), bad[0]));
            if t.is_cop_win() {
                cop_win.pass();
            } else {
                cop_win.flag(format!("{name} is robber-win"));
            }
            let n = spec.grid_size;
            for a in 0..n {
                for b in 0..n {
                    let u = spec.grid_index(a, b);
                    for v in 0..g.vertex_count() {
                        if let EtaValue::Steps(k) = t.get(u, v) {
                            if u != v && (k as usize) < a.min(b) {
                                min_coord.flag(format!("{name}: eta(({a},{b}), {}) = {k}", g.label(v)));
                            } else {
                                min_coord.pass();
                            }
                        }
                    }
                }
            }
            if spec.grid_size == 4 && spec.tail_length == 0 {
                match naive_game_values(&g, g.vertex_count()) {
                    Ok(naive) => {
                        for u in 0..g.vertex_count() {
                            for v in 0..g.vertex_count() {
                                oracle.expect(t.get(u, v) == naive.get(u, v), || format!("{name} ({u},{v})"));
                            }
                        }
                    }
                    Err(e) => oracle.fail(format!("{name}: {e}")),
                }
            }
            if spec.tail_length > 0 {
                let tn = spec.tail_length as u32;
                for i in 1..=spec.tail_vertices() {
                    for j in 0..i {
                        let cop = if j == 0 { spec.grid_index(0, 0) } else { spec.tail_index(j) };
                        let want = EtaValue::Steps(tn + 1 - j as u32);
                        let got = t.get(spec.tail_index(i), cop);
                        chase.expect(got == want, || format!("{name}: robber (-{i},0), cop {}: {got}, expected {want}", g.label(cop)));
                    }
                }
            }
            [identity, oracle, cop_win, min_coord, chase]
        })
        .collect();
    let mut checks = merge(rows);
    checks.retain(|c| c.passed + c.failed + c.flagged > 0);

    let mut corpus_identity = Check::new("recursion-identity-corpus", None);
    for (i, g) in corpus(config).iter().enumerate() {
        match eta_all(g) {
            Ok(t) => {
                let bad = recursion_violations(g, &t);
                corpus_identity.expect(bad.is_empty(), || format!("graph {i}: {:?}", bad[0]));
            }
            Err(e) => corpus_identity.fail(format!("graph {i}: {e}")),
        }
    }
    checks.insert(1, corpus_identity);
    checks
}
