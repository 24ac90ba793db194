//! Stratified sampling of ordinals, vertices, neighbourhoods and claims.
//!
//! Proofs case-split on coordinates 0, 1, 2, the coordinates of the vertices
//! involved and their neighbours in the order, and limit points; every
//! sampler mixes those boundary strata with random normal forms.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::certificate::{ChallengeSampler, Claim};
use super::families::Family;
use super::graph::{SymVertex, SymbolicGraph};
use super::SymbolicError;
use crate::ordinal::Ordinal;

const MAX_TERMS: usize = 3;
const SMALL: u64 = 12;

/// Uniform-ish random ordinal `< bound` with a bounded number of terms;
/// `None` when `bound` is zero.
pub fn random_below(rng: &mut impl Rng, bound: &Ordinal) -> Option<Ordinal> {
    if bound.is_zero() {
        return None;
    }
    if let Some(n) = bound.as_finite() {
        return Some(Ordinal::finite(rng.gen_range(0..n)));
    }
    if rng.gen_bool(0.2) {
        return Some(Ordinal::finite(rng.gen_range(0..SMALL)));
    }
    let terms = bound.terms();
    let j = rng.gen_range(0..terms.len());
    let mut out: Vec<(Ordinal, u64)> = terms[..j].to_vec();
    let (e, c) = &terms[j];
    let c2 = rng.gen_range(0..*c);
    if c2 > 0 {
        out.push((e.clone(), c2));
    }
    // Anything below ω^e may follow.
    let budget = MAX_TERMS.saturating_sub(out.len()).max(1);
    out.extend(random_below_power(rng, e, budget));
    Some(Ordinal::from_terms(out).expect("decreasing exponents by construction"))
}

/// Terms of a random ordinal `< ω^e`.
fn random_below_power(rng: &mut impl Rng, e: &Ordinal, max_terms: usize) -> Vec<(Ordinal, u64)> {
    let mut out = Vec::new();
    let mut cap = e.clone();
    for _ in 0..rng.gen_range(0..=max_terms) {
        let Some(ex) = random_below(rng, &cap) else { break };
        if ex.is_zero() {
            out.push((ex, rng.gen_range(1..SMALL)));
            break;
        }
        out.push((ex.clone(), rng.gen_range(1..=3)));
        cap = ex;
    }
    out
}

/// Random ordinal in `(lo, bound)`; `bound` must be a limit above `lo`.
pub fn random_between(rng: &mut impl Rng, lo: &Ordinal, bound: &Ordinal) -> Ordinal {
    if rng.gen_bool(0.25) {
        return lo.successor();
    }
    for _ in 0..8 {
        if let Some(x) = random_below(rng, bound) {
            if x > *lo {
                return x;
            }
        }
    }
    lo.plus(rng.gen_range(1..4))
}

/// `ω·k`, `ω²`, `ω²·2`, `ω^ω`, … that lie below `gamma`.
pub fn limit_points(gamma: &Ordinal) -> Vec<Ordinal> {
    let w = Ordinal::omega();
    let mut pts = vec![
        w.clone(),
        Ordinal::monomial(Ordinal::one(), 2),
        Ordinal::monomial(Ordinal::one(), 3),
        Ordinal::omega_pow(Ordinal::finite(2)),
        Ordinal::monomial(Ordinal::finite(2), 2),
        Ordinal::omega_pow(Ordinal::finite(2)) + w.clone(),
        Ordinal::omega_pow(Ordinal::finite(3)),
        Ordinal::omega_pow(w.clone()),
        Ordinal::monomial(w.clone(), 2),
        Ordinal::omega_pow(w.successor()),
    ];
    pts.retain(|p| p < gamma);
    pts
}

/// One coordinate from the boundary strata or a random normal form.
pub fn random_coordinate(rng: &mut impl Rng, gamma: &Ordinal) -> Ordinal {
    match rng.gen_range(0..10) {
        0 | 1 => Ordinal::finite(rng.gen_range(0..3)),
        2 => {
            let pts = limit_points(gamma);
            pts.choose(rng).cloned().unwrap_or_else(Ordinal::zero)
        }
        3 => {
            let pts = limit_points(gamma);
            pts.choose(rng).map(|p| p.plus(rng.gen_range(1..3))).unwrap_or_else(Ordinal::one)
        }
        _ => random_below(rng, gamma).expect("gamma is nonzero"),
    }
}

/// A grid vertex from one of the strata: x-axis, y-axis, diagonal,
/// `(c, c+1)`/`(c+1, c)`, or generic.
pub fn random_grid_vertex(rng: &mut impl Rng, gamma: &Ordinal) -> SymVertex {
    let c = random_coordinate(rng, gamma);
    match rng.gen_range(0..6) {
        0 => SymVertex::Grid(c, Ordinal::zero()),
        1 => SymVertex::Grid(Ordinal::zero(), c),
        2 => SymVertex::Grid(c.clone(), c),
        3 => SymVertex::Grid(c.successor(), c),
        4 => SymVertex::Grid(c.clone(), c.successor()),
        _ => SymVertex::Grid(c, random_coordinate(rng, gamma)),
    }
}

/// Any vertex of `g`, tail included.
pub fn random_vertex(rng: &mut impl Rng, g: &SymbolicGraph) -> SymVertex {
    if g.tail_len() > 0 && rng.gen_bool(0.15) {
        SymVertex::Tail(rng.gen_range(1..=g.tail_len()))
    } else {
        random_grid_vertex(rng, g.gamma())
    }
}

/// A pair satisfying `family`'s hypotheses on `g`.
pub fn sample_claim(rng: &mut impl Rng, g: &SymbolicGraph, family: Family) -> Result<Claim, SymbolicError> {
    if !family.applies_to(g) {
        return Err(SymbolicError::Hypothesis {
            family: family.name().into(),
            u: "-".into(),
            v: "-".into(),
            clause: "family does not apply to this graph".into(),
        });
    }
    let gamma = g.gamma().clone();
    for _ in 0..1000 {
        let (u, v) = match family {
            Family::XAxisCop | Family::YAxisCop => {
                let b = random_coordinate(rng, &gamma);
                let a = if !g.diagonal_edges() && rng.gen_bool(0.2) { b.clone() } else { random_between(rng, &b, &gamma) };
                let xi = random_between(rng, &a, &gamma);
                let (u, v) = (SymVertex::Grid(a, b), SymVertex::Grid(xi, Ordinal::zero()));
                if family == Family::YAxisCop {
                    (u.swapped(), v.swapped())
                } else {
                    (u, v)
                }
            }
            Family::DiagonalPair => {
                let a = random_coordinate(rng, &gamma);
                let b = random_coordinate(rng, &gamma);
                (SymVertex::Grid(a.clone(), a), SymVertex::Grid(b.clone(), b))
            }
            Family::UpperAssembly | Family::OriginCop => {
                let u = random_grid_vertex(rng, &gamma);
                let v = if family == Family::OriginCop { SymVertex::origin() } else { random_grid_vertex(rng, &gamma) };
                (u, v)
            }
            Family::GridCopLoose => (random_vertex(rng, g), random_grid_vertex(rng, &gamma)),
            Family::TailCop => (random_vertex(rng, g), SymVertex::Tail(rng.gen_range(1..=g.tail_len()))),
            Family::TailUpperAssembly => (random_vertex(rng, g), random_vertex(rng, g)),
            Family::TailChase => {
                let i = rng.gen_range(1..=g.tail_len());
                (SymVertex::Tail(i), SymVertex::on_path(rng.gen_range(0..i)))
            }
            Family::TailVsHub => {
                let c = random_coordinate(rng, &gamma);
                let v = match rng.gen_range(0..4) {
                    0 => SymVertex::origin(),
                    1 => SymVertex::Grid(c, Ordinal::zero()),
                    2 => SymVertex::Grid(Ordinal::zero(), c),
                    _ => SymVertex::Tail(1),
                };
                (SymVertex::Tail(rng.gen_range(1..=g.tail_len())), v)
            }
            Family::TailVsGrid => {
                (SymVertex::Tail(rng.gen_range(2..=g.tail_len())), random_grid_vertex(rng, &gamma))
            }
        };
        if let Ok(claim) = Claim::of_family(g, family, u, v) {
            return Ok(claim);
        }
    }
    Err(SymbolicError::Inconsistent(format!("could not sample a {family} claim")))
}

/// Coordinates worth probing around `vs`: 0, 1, 2, each coordinate with its
/// neighbours in the order, limit points, and random values.
pub fn coordinate_strata(rng: &mut impl Rng, gamma: &Ordinal, vs: &[&SymVertex], random: usize) -> Vec<Ordinal> {
    strata_with_limits(rng, gamma, &limit_points(gamma), vs, random)
}

fn strata_with_limits(
    rng: &mut impl Rng,
    gamma: &Ordinal,
    limits: &[Ordinal],
    vs: &[&SymVertex],
    random: usize,
) -> Vec<Ordinal> {
    let mut set: BTreeSet<Ordinal> = (0..3).map(Ordinal::finite).collect();
    for v in vs {
        if let Some((a, b)) = v.coords() {
            for c in [a, b] {
                set.insert(c.clone());
                set.insert(c.successor());
                set.insert(c.plus(2));
                if let Some(p) = c.predecessor() {
                    set.insert(p);
                }
                if let Some(r) = random_below(rng, c) {
                    set.insert(r);
                }
            }
        }
    }
    set.extend(limits.iter().cloned());
    for _ in 0..random {
        set.insert(random_below(rng, gamma).expect("gamma is nonzero"));
    }
    set.into_iter().filter(|c| c < gamma).collect()
}

/// Every vertex of `N[u]` over the coordinate grid `coords`, plus tail
/// neighbours.
pub fn closed_neighbourhood_over(g: &SymbolicGraph, u: &SymVertex, coords: &[Ordinal]) -> Vec<SymVertex> {
    let mut out = vec![u.clone()];
    for a in coords {
        for b in coords {
            let x = SymVertex::Grid(a.clone(), b.clone());
            if x != *u && g.adj(u, &x) {
                out.push(x);
            }
        }
    }
    for i in 1..=g.tail_len() {
        let t = SymVertex::Tail(i);
        if g.adj(u, &t) {
            out.push(t);
        }
    }
    out
}

/// Challenge sampler for certificates. The root gets the whole stratified
/// neighbourhood, moves escaping `N[v]` first; inner nodes draw adversarial
/// moves by rejection.
pub struct StratifiedSampler {
    rng: ChaCha8Rng,
    limits: Option<(Ordinal, Vec<Ordinal>)>,
}

impl StratifiedSampler {
    pub fn new(rng: ChaCha8Rng) -> Self {
        StratifiedSampler { rng, limits: None }
    }
}

impl ChallengeSampler for StratifiedSampler {
    fn challenges(&mut self, g: &SymbolicGraph, claim: &Claim, count: usize) -> Vec<SymVertex> {
        let (u, v) = (&claim.u, &claim.v);
        if self.limits.as_ref().map_or(true, |(gamma, _)| gamma != g.gamma()) {
            self.limits = Some((g.gamma().clone(), limit_points(g.gamma())));
        }
        let limits = &self.limits.as_ref().expect("just filled").1;
        let random = if count <= 2 { 3 } else { 6 };
        let coords = strata_with_limits(&mut self.rng, g.gamma(), limits, &[u, v], random);
        if count <= 2 {
            // Rejection first: cheap and usually enough.
            let mut found = Vec::new();
            for _ in 0..64 {
                let x = SymVertex::Grid(
                    coords.choose(&mut self.rng).expect("nonempty").clone(),
                    coords.choose(&mut self.rng).expect("nonempty").clone(),
                );
                if g.sees(u, &x) && !g.sees(v, &x) && !found.contains(&x) {
                    found.push(x);
                    if found.len() == count {
                        return found;
                    }
                }
            }
        }
        let all = closed_neighbourhood_over(g, u, &coords);
        let (mut escaping, mut rest): (Vec<_>, Vec<_>) = all.into_iter().partition(|x| !g.sees(v, x));
        escaping.shuffle(&mut self.rng);
        rest.shuffle(&mut self.rng);
        escaping.extend(rest);
        escaping.truncate(count);
        escaping
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn o(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    #[test]
    fn random_below_stays_below() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for bound in ["w", "w*2", "w^2", "w^w", "w^w*2+w^3+5", "7"] {
            let b = o(bound);
            for _ in 0..500 {
                let x = random_below(&mut rng, &b).unwrap();
                assert!(x < b, "{x} !< {b}");
            }
        }
        assert_eq!(random_below(&mut rng, &Ordinal::zero()), None);
    }

    #[test]
    fn random_below_reaches_infinite_values() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let b = o("w^w");
        let seen = (0..200).filter(|_| !random_below(&mut rng, &b).unwrap().is_finite()).count();
        assert!(seen > 50);
    }

    #[test]
    fn limit_points_respect_gamma() {
        assert_eq!(limit_points(&o("w")), Vec::<Ordinal>::new());
        assert_eq!(limit_points(&o("w*2")), vec![o("w")]);
        assert!(limit_points(&o("w^w")).contains(&o("w^3")));
    }

    #[test]
    fn sampled_claims_satisfy_hypotheses() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = SymbolicGraph::new(o("w^2"), 2, true).unwrap();
        for f in Family::ALL {
            for _ in 0..50 {
                let c = sample_claim(&mut rng, &g, f).unwrap();
                assert_eq!(f.rank(&g, &c.u, &c.v).unwrap(), c.rank);
            }
        }
    }

    #[test]
    fn challenges_lie_in_the_neighbourhood() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let g = SymbolicGraph::new(o("w^2"), 0, true).unwrap();
        let mut s = StratifiedSampler::new(ChaCha8Rng::seed_from_u64(5));
        for _ in 0..50 {
            let c = sample_claim(&mut rng, &g, Family::UpperAssembly).unwrap();
            for x in s.challenges(&g, &c, 20) {
                assert!(g.sees(&c.u, &x));
            }
        }
    }
}
