//! Suites over the symbolic families: witness audits, exact bounds, strategy
//! simulations, robber survival and the variant without diagonal edges.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::config::SuiteConfig;
use super::report::{Check, DescentSummary};
use super::sub_seed;
use crate::ordinal::Ordinal;
use crate::symbolic::sampler::{random_below, random_between, random_coordinate, random_grid_vertex, random_vertex, sample_claim};
use crate::symbolic::{
    certify, eta_bounds, refute_isolated_cop, rho, robber_strategy, simulate, BudgetRobber, CertifyConfig, CertifyError,
    ClaimId, ConstructiveCop, CopPolicy, Family, GreedyCop, ProofWitnesses, RandomRobber, SimOptions, StratifiedSampler,
    SymVertex, SymbolicError, SymbolicGraph, Witness, WitnessSource,
};

const N0_FAMILIES: [Family; 6] = [
    Family::XAxisCop,
    Family::YAxisCop,
    Family::DiagonalPair,
    Family::UpperAssembly,
    Family::GridCopLoose,
    Family::OriginCop,
];

const TAIL_FAMILIES: [Family; 8] = [
    Family::DiagonalPair,
    Family::OriginCop,
    Family::GridCopLoose,
    Family::TailCop,
    Family::TailUpperAssembly,
    Family::TailChase,
    Family::TailVsHub,
    Family::TailVsGrid,
];

/// Pairs drawn for the exactness and refutation checks.
const EXACT_PAIRS: usize = 50;

fn graph(gamma: &Ordinal, n: u64, diag: bool) -> SymbolicGraph {
    SymbolicGraph::new(gamma.clone(), n, diag).expect("validated configuration")
}

fn tail_graphs(config: &SuiteConfig, gamma: &Ordinal) -> Vec<SymbolicGraph> {
    config.tail_lengths.iter().map(|&n| graph(gamma, n, true)).collect()
}

fn rng_for(config: &SuiteConfig, label: &str, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(sub_seed(config.seed, label, index))
}

fn certify_config(config: &SuiteConfig) -> CertifyConfig {
    CertifyConfig { root_samples: config.root_challenges, inner_samples: 1, step_budget: config.step_budget }
}

/// `samples` audits of `family`; sample `i` runs on `graphs[i % len]`.
fn audit(
    config: &SuiteConfig,
    name: String,
    claim: ClaimId,
    graphs: &[SymbolicGraph],
    family: Family,
    source: &(dyn WitnessSource + Sync),
) -> Check {
    let cfg = certify_config(config);
    let parts: Vec<Check> = (0..config.samples_per_claim)
        .into_par_iter()
        .map(|i| {
            let mut check = Check::new(name.clone(), Some(claim));
            let g = &graphs[i % graphs.len()];
            let mut rng = rng_for(config, &name, i as u64);
            let mut sampler = StratifiedSampler::new(ChaCha8Rng::seed_from_u64(rng.gen()));
            match sample_claim(&mut rng, g, family) {
                Err(e) => check.fail(format!("sampling: {e}")),
                Ok(c) => {
                    let label = format!("{} <= {} at {}", c.u, c.v, c.rank);
                    match certify(g, c, &mut sampler, &cfg, source) {
                        Ok(cert) => {
                            let s = cert.stats();
                            check.pass();
                            check.descent =
                                Some(DescentSummary { max_depth: s.max_depth, total_steps: s.steps as u64 });
                        }
                        Err(e) => check.fail(format!("{label}: {e}")),
                    }
                }
            }
            check
        })
        .collect();
    let mut out = Check::new(name, Some(claim));
    out.descent = Some(DescentSummary::default());
    for c in parts {
        out.absorb(c);
    }
    out
}

/// Answers with the right vertex but never lowers the rank.
struct StalledWitnesses;

impl WitnessSource for StalledWitnesses {
    fn witness(
        &self,
        g: &SymbolicGraph,
        family: Family,
        u: &SymVertex,
        v: &SymVertex,
        x: &SymVertex,
    ) -> Result<Witness, SymbolicError> {
        let mut w = family.witness(g, u, v, x)?;
        w.rank = family.rank(g, u, v)?;
        Ok(w)
    }
}

/// Every audit under a non-decreasing witness source must be rejected at
/// the first step.
fn mutation_check(config: &SuiteConfig, gamma: &Ordinal) -> Check {
    let name = format!("mutation-caught @ {gamma}");
    let mut check = Check::new(name.clone(), None);
    let g = graph(gamma, 0, true);
    let cfg = certify_config(config);
    for (k, family) in N0_FAMILIES.iter().enumerate() {
        for i in 0..10u64 {
            let mut rng = rng_for(config, &name, (k as u64) << 32 | i);
            let mut sampler = StratifiedSampler::new(ChaCha8Rng::seed_from_u64(rng.gen()));
            let c = match sample_claim(&mut rng, &g, *family) {
                Ok(c) => c,
                Err(e) => {
                    check.fail(format!("sampling: {e}"));
                    continue;
                }
            };
            let label = format!("{family} {} <= {}", c.u, c.v);
            match certify(&g, c, &mut sampler, &cfg, &StalledWitnesses) {
                Err(CertifyError::Violation(v)) if v.depth == 1 => check.pass(),
                Err(e) => check.fail(format!("{label}: wrong rejection: {e}")),
                Ok(_) => check.fail(format!("{label}: stalled witnesses accepted")),
            }
        }
    }
    check
}

/// A cop that sees no diagonal vertex loses to the robber stepping onto the
/// diagonal: rank γ+1, not γ.
fn isolated_cop_refutation(config: &SuiteConfig, gamma: &Ordinal) -> Check {
    let name = format!("isolated-cop-refutation @ {gamma}");
    let mut check = Check::new(name.clone(), Some(ClaimId::IsolatedCop));
    let g = graph(gamma, 0, true);
    for i in 0..EXACT_PAIRS as u64 {
        let mut rng = rng_for(config, &name, i);
        let (v, u) = isolated_pair(&mut rng, &g);
        match refute_isolated_cop(&g, &u, &v, &mut rng) {
            Ok(r) => check.expect(r.escapes_checked > 0, || format!("({u}, {v}): no escapes checked")),
            Err(e) => check.fail(format!("({u}, {v}): {e}")),
        }
        match eta_bounds(&g, &u, &v) {
            Ok(b) => check.expect(b.exact && b.lower == gamma.successor(), || {
                format!("({u}, {v}): bounds [{}, {}]", b.lower, b.upper)
            }),
            Err(e) => check.fail(format!("({u}, {v}): {e}")),
        }
    }
    check
}

/// `v = (c, c+1)` or its mirror with `c ≥ 1`, and a robber that sees the diagonal.
fn isolated_pair(rng: &mut ChaCha8Rng, g: &SymbolicGraph) -> (SymVertex, SymVertex) {
    let mut c = random_coordinate(rng, g.gamma());
    if c.is_zero() {
        c = Ordinal::one();
    }
    let v = if rng.gen_bool(0.5) { SymVertex::Grid(c.clone(), c.successor()) } else { SymVertex::Grid(c.successor(), c) };
    loop {
        let u = random_grid_vertex(rng, g.gamma());
        if u != v && g.meets_diagonal(&u) {
            return (v, u);
        }
    }
}

pub fn lemma_certificates(config: &SuiteConfig) -> Vec<Check> {
    let mut checks = Vec::new();
    for gamma in &config.gammas {
        let g0 = [graph(gamma, 0, true)];
        for family in N0_FAMILIES {
            let name = format!("{family} @ {gamma}");
            checks.push(audit(config, name, family.claim_id(&g0[0]), &g0, family, &ProofWitnesses));
        }
        let tails = tail_graphs(config, gamma);
        for family in TAIL_FAMILIES {
            let name = format!("{family} @ {gamma}+n");
            checks.push(audit(config, name, family.claim_id(&tails[0]), &tails, family, &ProofWitnesses));
        }
        checks.push(mutation_check(config, gamma));
        checks.push(isolated_cop_refutation(config, gamma));
    }
    checks
}

pub fn symbolic_bounds(config: &SuiteConfig) -> Vec<Check> {
    let mut checks = Vec::new();
    for gamma in &config.gammas {
        let g0 = graph(gamma, 0, true);

        let name = format!("diagonal-robber-exact @ {gamma}");
        let mut exact = Check::new(name.clone(), Some(ClaimId::DiagonalRobber));
        for i in 0..EXACT_PAIRS as u64 {
            let mut rng = rng_for(config, &name, i);
            let c = random_coordinate(&mut rng, gamma);
            let u = SymVertex::Grid(c.clone(), c);
            let v = loop {
                let v = random_grid_vertex(&mut rng, gamma);
                if !v.is_diagonal() {
                    break v;
                }
            };
            match eta_bounds(&g0, &u, &v) {
                Ok(b) => exact.expect(b.exact && b.lower == *gamma, || {
                    format!("eta({u}, {v}) in [{}, {}], expected exactly {gamma}", b.lower, b.upper)
                }),
                Err(e) => exact.fail(format!("({u}, {v}): {e}")),
            }
        }
        checks.push(exact);

        let mut limit = Check::new(format!("limit-rho @ {gamma}"), Some(ClaimId::LimitRho));
        let r = rho(&g0);
        limit.expect(r == *gamma, || format!("rho = {r}, expected {gamma}"));
        checks.push(limit);

        let mut tail_pair = Check::new(format!("tail-pair-exact @ {gamma}+n"), Some(ClaimId::TailPair));
        let mut successor = Check::new(format!("successor-rho @ {gamma}+n"), Some(ClaimId::SuccessorRho));
        for g in tail_graphs(config, gamma) {
            let n = g.tail_n();
            let want = gamma.plus(n);
            let (u, v) = (SymVertex::Tail(n), SymVertex::Tail(n + 1));
            match eta_bounds(&g, &u, &v) {
                Ok(b) => tail_pair.expect(b.exact && b.lower == want, || {
                    format!("eta({u}, {v}) in [{}, {}], expected exactly {want}", b.lower, b.upper)
                }),
                Err(e) => tail_pair.fail(format!("({u}, {v}): {e}")),
            }
            let r = rho(&g);
            successor.expect(r == want, || format!("n = {n}: rho = {r}, expected {want}"));
        }
        checks.push(tail_pair);
        checks.push(successor);

        let name = format!("bound-sanity @ {gamma}");
        let mut sanity = Check::new(name.clone(), None);
        let mut graphs = vec![g0.clone(), graph(gamma, 0, false)];
        graphs.extend(tail_graphs(config, gamma));
        for i in 0..config.samples_per_claim as u64 {
            let mut rng = rng_for(config, &name, i);
            let g = &graphs[i as usize % graphs.len()];
            let u = random_vertex(&mut rng, g);
            let v = random_vertex(&mut rng, g);
            match eta_bounds(g, &u, &v) {
                Ok(b) => {
                    let ceiling = rho(g);
                    sanity.expect(
                        b.lower <= b.upper && b.exact == (b.lower == b.upper) && (u == v) == b.upper.is_zero(),
                        || format!("({u}, {v}): [{}, {}] exact {}", b.lower, b.upper, b.exact),
                    );
                    if b.upper > ceiling {
                        sanity.flag(format!("({u}, {v}): upper {} above rho {ceiling}", b.upper));
                    }
                }
                Err(e) => sanity.fail(format!("({u}, {v}): {e}")),
            }
        }
        checks.push(sanity);
    }
    checks
}

fn random_start(rng: &mut ChaCha8Rng, g: &SymbolicGraph) -> (SymVertex, SymVertex) {
    let cop = random_vertex(rng, g);
    loop {
        let robber = random_vertex(rng, g);
        if robber != cop {
            return (cop, robber);
        }
    }
}

/// The constructive cop against seeded random robbers.
fn capture_check(config: &SuiteConfig, name: String, claim: ClaimId, g: &SymbolicGraph) -> Check {
    let opts = SimOptions { max_rounds: config.simulation_round_cap, robber_first: false };
    let parts: Vec<Check> = (0..config.simulation_robbers as u64)
        .into_par_iter()
        .map(|i| {
            let mut check = Check::new(name.clone(), Some(claim));
            let mut rng = rng_for(config, &name, i);
            let (cop, robber) = random_start(&mut rng, g);
            let mut robber_policy = RandomRobber::new(ChaCha8Rng::seed_from_u64(rng.gen()));
            let label = format!("cop {cop}, robber {robber}");
            match simulate(g, &mut ConstructiveCop, &mut robber_policy, cop, robber, &opts) {
                Ok(t) if !t.captured => check.fail(format!("{label}: not captured in {} rounds", opts.max_rounds)),
                Ok(t) if !t.chase_monotone() => check.fail(format!("{label}: chase coordinate did not decrease")),
                Ok(_) => check.pass(),
                Err(e) => check.fail(format!("{label}: {e}")),
            }
            check
        })
        .collect();
    fold(name, Some(claim), parts)
}

fn fold(name: String, claim: Option<ClaimId>, parts: Vec<Check>) -> Check {
    let mut out = Check::new(name, claim);
    for c in parts {
        out.absorb(c);
    }
    out
}

pub fn simulation(config: &SuiteConfig) -> Vec<Check> {
    let mut checks = Vec::new();
    for gamma in &config.gammas {
        let g = graph(gamma, 0, true);
        checks.push(capture_check(config, format!("constructive-capture @ {gamma}"), ClaimId::CopWinStrategy, &g));
    }
    if let (Some(gamma), Some(&n)) = (config.gammas.first(), config.tail_lengths.first()) {
        let g = graph(gamma, n, true);
        checks.push(capture_check(config, format!("constructive-capture @ {gamma}+{n}"), ClaimId::CopWinStrategy, &g));
    }
    checks
}

/// Budgeted robbers from `min(α,β) ≥ k+1` against each cop policy: the
/// cop must not capture within `k` moves.
fn survival_check(
    config: &SuiteConfig,
    name: String,
    claim: ClaimId,
    g: &SymbolicGraph,
    pairs: usize,
    policies: &[fn() -> Box<dyn CopPolicy>],
) -> Check {
    let jobs: Vec<(u64, u64)> =
        (1..=config.survival_budget_max).flat_map(|k| (0..pairs as u64).map(move |p| (k, p))).collect();
    let parts: Vec<Check> = jobs
        .into_par_iter()
        .map(|(k, p)| {
            let mut check = Check::new(name.clone(), Some(claim));
            let mut rng = rng_for(config, &name, k << 32 | p);
            let kk = Ordinal::finite(k);
            let robber = SymVertex::Grid(random_between(&mut rng, &kk, g.gamma()), random_between(&mut rng, &kk, g.gamma()));
            let cop = loop {
                let c = random_vertex(&mut rng, g);
                if c != robber {
                    break c;
                }
            };
            let opts = SimOptions { max_rounds: k as usize, robber_first: true };
            for make in policies {
                let mut cop_policy = make();
                let label = format!("k = {k}, {}: cop {cop}, robber {robber}", cop_policy.name());
                match simulate(g, cop_policy.as_mut(), &mut BudgetRobber::new(k), cop.clone(), robber.clone(), &opts) {
                    Ok(t) => check.expect(t.capture_after.is_none_or(|m| m as u64 > k), || {
                        format!("{label}: captured after {} cop moves", t.capture_after.unwrap_or(0))
                    }),
                    Err(e) => check.fail(format!("{label}: {e}")),
                }
            }
            check
        })
        .collect();
    fold(name, Some(claim), parts)
}

fn constructive() -> Box<dyn CopPolicy> {
    Box::new(ConstructiveCop)
}

fn greedy() -> Box<dyn CopPolicy> {
    Box::new(GreedyCop)
}

/// Escapes land in `N[u] \ N[v]`; `robber_strategy` checks membership.
fn escape_check(
    config: &SuiteConfig,
    name: String,
    claim: ClaimId,
    g: &SymbolicGraph,
    draw: impl Fn(&mut ChaCha8Rng, &SymbolicGraph) -> (Ordinal, SymVertex, SymVertex) + Sync,
) -> Check {
    let parts: Vec<Check> = (0..config.samples_per_claim as u64)
        .into_par_iter()
        .map(|i| {
            let mut check = Check::new(name.clone(), Some(claim));
            let mut rng = rng_for(config, &name, i);
            let (mu, u, v) = draw(&mut rng, g);
            match robber_strategy(g, &mu, &u, &v) {
                Ok(_) => check.pass(),
                Err(e) => check.fail(format!("mu {mu}, robber {u}, cop {v}: {e}")),
            }
            check
        })
        .collect();
    fold(name, Some(claim), parts)
}

fn min_coordinate_draw(rng: &mut ChaCha8Rng, g: &SymbolicGraph) -> (Ordinal, SymVertex, SymVertex) {
    let one = Ordinal::one();
    let u = SymVertex::Grid(random_between(rng, &one, g.gamma()), random_between(rng, &one, g.gamma()));
    let (a, b) = u.coords().expect("grid vertex");
    let mu = random_below(rng, a.min(b)).expect("coordinates are at least 2");
    let v = loop {
        let v = random_vertex(rng, g);
        if v != u {
            break v;
        }
    };
    (mu, u, v)
}

fn diagonal_draw(rng: &mut ChaCha8Rng, g: &SymbolicGraph) -> (Ordinal, SymVertex, SymVertex) {
    let c = random_coordinate(rng, g.gamma());
    let u = SymVertex::Grid(c.clone(), c);
    let v = loop {
        let v = random_grid_vertex(rng, g.gamma());
        if !v.is_diagonal() {
            break v;
        }
    };
    (random_below(rng, g.gamma()).expect("gamma is nonzero"), u, v)
}

fn tail_pair_draw(rng: &mut ChaCha8Rng, g: &SymbolicGraph) -> (Ordinal, SymVertex, SymVertex) {
    let j = rng.gen_range(1..=g.tail_len());
    let i = rng.gen_range(0..j);
    let mu = random_below(rng, g.gamma()).expect("gamma is nonzero");
    (mu, SymVertex::on_path(i), SymVertex::Tail(j))
}

pub fn survival(config: &SuiteConfig) -> Vec<Check> {
    let mut checks = Vec::new();
    let both: [fn() -> Box<dyn CopPolicy>; 2] = [constructive, greedy];
    for gamma in &config.gammas {
        let g0 = graph(gamma, 0, true);
        checks.push(survival_check(
            config,
            format!("budget-survival @ {gamma}"),
            ClaimId::MinCoordinate,
            &g0,
            config.survival_pairs,
            &both,
        ));
        checks.push(escape_check(config, format!("min-coordinate-escape @ {gamma}"), ClaimId::MinCoordinate, &g0, min_coordinate_draw));
        checks.push(escape_check(config, format!("diagonal-escape @ {gamma}"), ClaimId::DiagonalRobber, &g0, diagonal_draw));
        if let Some(&n) = config.tail_lengths.iter().max() {
            let g = graph(gamma, n, true);
            checks.push(survival_check(
                config,
                format!("budget-survival @ {gamma}+{n}"),
                ClaimId::MinCoordinateWithTail,
                &g,
                config.survival_pairs.div_ceil(4),
                &both,
            ));
            checks.push(escape_check(
                config,
                format!("min-coordinate-escape @ {gamma}+{n}"),
                ClaimId::MinCoordinateWithTail,
                &g,
                min_coordinate_draw,
            ));
            checks.push(escape_check(config, format!("tail-pair-escape @ {gamma}+{n}"), ClaimId::TailPair, &g, tail_pair_draw));
        }
    }
    checks
}

pub fn no_diagonal_variant(config: &SuiteConfig) -> Vec<Check> {
    let mut checks = Vec::new();
    for gamma in &config.gammas {
        let g = [graph(gamma, 0, false)];
        let mut r = Check::new(format!("no-diagonal-rho @ {gamma}"), Some(ClaimId::NoDiagonalRho));
        let value = rho(&g[0]);
        r.expect(value == *gamma, || format!("rho = {value}, expected {gamma}"));
        checks.push(r);
        for family in [Family::XAxisCop, Family::YAxisCop] {
            let name = format!("{family} @ {gamma} no-diagonal");
            checks.push(audit(config, name, family.claim_id(&g[0]), &g, family, &ProofWitnesses));
        }
        checks.push(audit(
            config,
            format!("upper-assembly @ {gamma} no-diagonal"),
            ClaimId::NoDiagonalRho,
            &g,
            Family::UpperAssembly,
            &ProofWitnesses,
        ));
        checks.push(capture_check(
            config,
            format!("constructive-capture @ {gamma} no-diagonal"),
            ClaimId::CopWinStrategy,
            &g[0],
        ));
        checks.push(escape_check(
            config,
            format!("min-coordinate-escape @ {gamma} no-diagonal"),
            ClaimId::NoDiagonalLower,
            &g[0],
            min_coordinate_draw,
        ));
        checks.push(survival_check(
            config,
            format!("budget-survival @ {gamma} no-diagonal"),
            ClaimId::NoDiagonalLower,
            &g[0],
            config.survival_pairs.div_ceil(4),
            &[constructive],
        ));
    }
    checks
}
