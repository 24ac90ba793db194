//! Playing the game on a symbolic graph.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::graph::{SymVertex, SymbolicGraph};
use super::sampler::{closed_neighbourhood_over, coordinate_strata};
use super::strategy::{cop_strategy, greedy_move, robber_strategy, Phase};
use super::SymbolicError;
use crate::ordinal::Ordinal;

pub trait CopPolicy {
    fn name(&self) -> &'static str;
    fn next(
        &mut self,
        g: &SymbolicGraph,
        cop: &SymVertex,
        robber: &SymVertex,
        phase: Phase,
    ) -> Result<(SymVertex, Phase), SymbolicError>;
}

pub trait RobberPolicy {
    fn name(&self) -> &'static str;
    fn next(&mut self, g: &SymbolicGraph, robber: &SymVertex, cop: &SymVertex) -> Result<SymVertex, SymbolicError>;
}

/// [`cop_strategy`] as a policy.
pub struct ConstructiveCop;

impl CopPolicy for ConstructiveCop {
    fn name(&self) -> &'static str {
        "constructive"
    }

    fn next(
        &mut self,
        g: &SymbolicGraph,
        cop: &SymVertex,
        robber: &SymVertex,
        phase: Phase,
    ) -> Result<(SymVertex, Phase), SymbolicError> {
        cop_strategy(g, cop, robber, phase)
    }
}

/// Moves to the candidate with the smallest `eta_bounds` against the robber.
/// Candidates come from the boundary strata around both players plus the
/// constructive cop's move.
pub struct GreedyCop;

impl CopPolicy for GreedyCop {
    fn name(&self) -> &'static str {
        "eta-bounds-greedy"
    }

    fn next(
        &mut self,
        g: &SymbolicGraph,
        cop: &SymVertex,
        robber: &SymVertex,
        phase: Phase,
    ) -> Result<(SymVertex, Phase), SymbolicError> {
        let (planned, planned_phase) = cop_strategy(g, cop, robber, phase)?;
        if planned_phase == Phase::Captured {
            return Ok((planned, planned_phase));
        }
        let coords = local_coordinates(cop, robber);
        let mut candidates = closed_neighbourhood_over(g, cop, &coords);
        candidates.push(planned);
        let y = greedy_move(g, robber, &candidates)?;
        let phase = match &y {
            SymVertex::Tail(_) => Phase::TailChase,
            SymVertex::Grid(a, b) if b.is_zero() && !a.is_zero() => Phase::XAxisChase,
            SymVertex::Grid(a, b) if a.is_zero() && !b.is_zero() => Phase::YAxisChase,
            _ => Phase::ToDiagonal,
        };
        Ok((y, phase))
    }
}

fn local_coordinates(a: &SymVertex, b: &SymVertex) -> Vec<Ordinal> {
    let mut out: Vec<Ordinal> = (0..3).map(Ordinal::finite).collect();
    for v in [a, b] {
        if let Some((x, y)) = v.coords() {
            for c in [x, y] {
                out.push(c.clone());
                out.push(c.successor());
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

pub struct StayRobber;

impl RobberPolicy for StayRobber {
    fn name(&self) -> &'static str {
        "stay"
    }

    fn next(&mut self, _: &SymbolicGraph, robber: &SymVertex, _: &SymVertex) -> Result<SymVertex, SymbolicError> {
        Ok(robber.clone())
    }
}

/// Random move from a stratified sample of `N[robber]`, escaping `N[cop]`
/// when such a move was sampled (with probability `escape_bias`).
pub struct RandomRobber {
    rng: ChaCha8Rng,
    pub escape_bias: f64,
}

impl RandomRobber {
    pub fn new(rng: ChaCha8Rng) -> Self {
        RandomRobber { rng, escape_bias: 0.9 }
    }
}

impl RobberPolicy for RandomRobber {
    fn name(&self) -> &'static str {
        "random"
    }

    fn next(&mut self, g: &SymbolicGraph, robber: &SymVertex, cop: &SymVertex) -> Result<SymVertex, SymbolicError> {
        let coords = coordinate_strata(&mut self.rng, g.gamma(), &[robber, cop], 2);
        let all = closed_neighbourhood_over(g, robber, &coords);
        let escaping: Vec<&SymVertex> = all.iter().filter(|x| !g.sees(cop, x)).collect();
        let pick = if !escaping.is_empty() && self.rng.gen_bool(self.escape_bias) {
            escaping.choose(&mut self.rng).copied()
        } else {
            all.choose(&mut self.rng)
        };
        Ok(pick.expect("N[robber] contains the robber").clone())
    }
}

/// Budgeted robber: on its `r`-th move escapes with budget `k - r + 1`,
/// then stays put once the budget is spent.
pub struct BudgetRobber {
    remaining: u64,
}

impl BudgetRobber {
    pub fn new(budget: u64) -> Self {
        BudgetRobber { remaining: budget }
    }
}

impl RobberPolicy for BudgetRobber {
    fn name(&self) -> &'static str {
        "budget"
    }

    fn next(&mut self, g: &SymbolicGraph, robber: &SymVertex, cop: &SymVertex) -> Result<SymVertex, SymbolicError> {
        if self.remaining == 0 {
            return Ok(robber.clone());
        }
        let mu = Ordinal::finite(self.remaining);
        self.remaining -= 1;
        robber_strategy(g, &mu, robber, cop)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimOptions {
    pub max_rounds: usize,
    /// Robber moves first in each round (the order `η` counts in).
    pub robber_first: bool,
}

impl Default for SimOptions {
    fn default() -> Self {
        SimOptions { max_rounds: 10_000, robber_first: false }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Round {
    pub cop: SymVertex,
    pub robber: SymVertex,
    pub phase: Phase,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axis {
    X,
    Y,
}

/// Consecutive rounds with the cop on an axis strictly ahead of the robber;
/// `values` holds the robber's other coordinate each round.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChaseSegment {
    pub axis: Axis,
    pub values: Vec<Ordinal>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlayTrace {
    pub cop_policy: String,
    pub robber_policy: String,
    pub start: Round,
    pub rounds: Vec<Round>,
    pub captured: bool,
    pub cop_moves: usize,
    /// Cop moves made up to and including the capture.
    pub capture_after: Option<usize>,
    pub chase: Vec<ChaseSegment>,
}

impl PlayTrace {
    pub fn chase_monotone(&self) -> bool {
        self.chase.iter().all(|s| s.values.windows(2).all(|w| w[1] < w[0]))
    }
}

fn chase_position(cop: &SymVertex, robber: &SymVertex) -> Option<(Axis, Ordinal)> {
    let (SymVertex::Grid(p, q), SymVertex::Grid(a, b)) = (cop, robber) else { return None };
    if q.is_zero() && !p.is_zero() && a < p && !b.is_zero() {
        Some((Axis::X, b.clone()))
    } else if p.is_zero() && !q.is_zero() && b < q && !a.is_zero() {
        Some((Axis::Y, a.clone()))
    } else {
        None
    }
}

pub fn simulate(
    g: &SymbolicGraph,
    cop_policy: &mut dyn CopPolicy,
    robber_policy: &mut dyn RobberPolicy,
    cop: SymVertex,
    robber: SymVertex,
    options: &SimOptions,
) -> Result<PlayTrace, SymbolicError> {
    g.check(&cop)?;
    g.check(&robber)?;
    if cop == robber {
        return Err(SymbolicError::SameStart);
    }
    let start = Round { cop: cop.clone(), robber: robber.clone(), phase: Phase::ToDiagonal };
    let mut trace = PlayTrace {
        cop_policy: cop_policy.name().into(),
        robber_policy: robber_policy.name().into(),
        start,
        rounds: Vec::new(),
        captured: false,
        cop_moves: 0,
        capture_after: None,
        chase: Vec::new(),
    };
    let (mut c, mut r, mut phase) = (cop, robber, Phase::ToDiagonal);
    let mut in_chase: Option<Axis> = None;

    for _ in 0..options.max_rounds {
        let mut robber_turn = |r: &mut SymVertex, c: &SymVertex| -> Result<bool, SymbolicError> {
            let x = robber_policy.next(g, r, c)?;
            if !g.contains(&x) || !g.sees(r, &x) {
                return Err(SymbolicError::RuleViolation { player: "robber".into(), from: r.to_string(), to: x.to_string() });
            }
            *r = x;
            Ok(*r == *c)
        };
        if options.robber_first && robber_turn(&mut r, &c)? {
            trace.captured = true;
            trace.capture_after = Some(trace.cop_moves);
            trace.rounds.push(Round { cop: c.clone(), robber: r.clone(), phase: Phase::Captured });
            break;
        }

        let (y, next_phase) = cop_policy.next(g, &c, &r, phase)?;
        if !g.contains(&y) || !g.sees(&c, &y) {
            return Err(SymbolicError::RuleViolation { player: "cop".into(), from: c.to_string(), to: y.to_string() });
        }
        c = y;
        phase = next_phase;
        trace.cop_moves += 1;
        if c == r {
            trace.captured = true;
            trace.capture_after = Some(trace.cop_moves);
            trace.rounds.push(Round { cop: c.clone(), robber: r.clone(), phase: Phase::Captured });
            break;
        }
        match chase_position(&c, &r) {
            Some((axis, value)) => {
                if in_chase != Some(axis) {
                    trace.chase.push(ChaseSegment { axis, values: Vec::new() });
                    in_chase = Some(axis);
                }
                trace.chase.last_mut().expect("segment opened").values.push(value);
            }
            None => in_chase = None,
        }

        if !options.robber_first && robber_turn(&mut r, &c)? {
            trace.captured = true;
            trace.capture_after = Some(trace.cop_moves);
            trace.rounds.push(Round { cop: c.clone(), robber: r.clone(), phase: Phase::Captured });
            break;
        }
        trace.rounds.push(Round { cop: c.clone(), robber: r.clone(), phase });
    }
    Ok(trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn v(s: &str) -> SymVertex {
        s.parse().unwrap()
    }

    fn graph(gamma: &str) -> SymbolicGraph {
        SymbolicGraph::new(gamma.parse().unwrap(), 0, true).unwrap()
    }

    #[test]
    fn stay_robber_is_caught() {
        let g = graph("w");
        let t = simulate(&g, &mut ConstructiveCop, &mut StayRobber, v("(0,0)"), v("(3,3)"), &SimOptions::default())
            .unwrap();
        assert!(t.captured);
        assert!(t.rounds.len() <= 3);
    }

    #[test]
    fn random_robber_is_caught_with_decreasing_chase() {
        let g = graph("w^2");
        let mut robber = RandomRobber::new(ChaCha8Rng::seed_from_u64(0));
        let t = simulate(&g, &mut ConstructiveCop, &mut robber, v("(0,0)"), v("(w+3,5)"), &SimOptions::default())
            .unwrap();
        assert!(t.captured);
        assert!(t.chase_monotone());
    }

    #[test]
    fn same_start_rejected() {
        let g = graph("w");
        let r = simulate(&g, &mut ConstructiveCop, &mut StayRobber, v("(1,1)"), v("(1,1)"), &SimOptions::default());
        assert!(matches!(r, Err(SymbolicError::SameStart)));
    }

    struct Teleport;
    impl RobberPolicy for Teleport {
        fn name(&self) -> &'static str {
            "teleport"
        }
        fn next(&mut self, _: &SymbolicGraph, _: &SymVertex, _: &SymVertex) -> Result<SymVertex, SymbolicError> {
            Ok("(9,5)".parse().unwrap())
        }
    }

    #[test]
    fn illegal_moves_are_reported() {
        let g = graph("w");
        let r = simulate(&g, &mut ConstructiveCop, &mut Teleport, v("(9,0)"), v("(9,1)"), &SimOptions::default());
        assert!(matches!(r, Err(SymbolicError::RuleViolation { .. })));
    }

    #[test]
    fn budget_robber_survives() {
        let g = graph("w");
        let opts = SimOptions { max_rounds: 50, robber_first: true };
        for cop in [v("(0,0)"), v("(9,9)"), v("(2,3)")] {
            let t = simulate(&g, &mut ConstructiveCop, &mut BudgetRobber::new(5), cop, v("(6,7)"), &opts).unwrap();
            assert!(t.capture_after.map_or(true, |k| k > 5), "{t:?}");
        }
    }
}
