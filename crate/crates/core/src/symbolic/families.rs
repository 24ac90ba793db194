//! Upper-bound claim families: hypotheses, ranks and the cop's witness moves.
//!
//! A family `F` proves `u ≤_{rank(u,v)} v` for every pair satisfying its
//! hypotheses. [`Family::witness`] answers a robber move `x ∈ N[u]` with a
//! cop move `y ∈ N[v]` and a strictly smaller rank `δ`, naming the family
//! that proves `x ≤_δ y` next. Free choices resolve to the least valid value.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::bounds::{diagonal_pair_rank, gamma_plus, ClaimId};
use super::graph::{SymVertex, SymbolicGraph};
use super::SymbolicError;
use crate::ordinal::Ordinal;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// `u = (α,β)`, `v = (ξ,0)`, `β < α < ξ`: rank `max(β,1)`.
    XAxisCop,
    /// Mirror of [`Family::XAxisCop`].
    YAxisCop,
    /// Distinct diagonal vertices: rank `α` for `α > 1`, else 2 (`n+2` with a tail).
    DiagonalPair,
    /// Any two distinct grid vertices: rank `γ`.
    UpperAssembly,
    /// Grid robber, cop at the origin: rank `max(α,β)+2`.
    OriginCop,
    /// Any robber, grid cop: rank `γ+1`.
    GridCopLoose,
    /// Cop on `(-i,0)`: rank `γ+(i-1)`.
    TailCop,
    /// Any distinct pair with a tail: rank `γ+n`.
    TailUpperAssembly,
    /// Robber on `(-i,0)` behind a cop on the path at index `j < i`: rank `n+1-j`.
    TailChase,
    /// Robber on the tail, cop seeing the origin: rank `n+2`.
    TailVsHub,
    /// Robber on `(-i,0)`, `i ≥ 2`, grid cop: rank `n+3`.
    TailVsGrid,
}

impl Family {
    pub const ALL: [Family; 11] = [
        Family::XAxisCop,
        Family::YAxisCop,
        Family::DiagonalPair,
        Family::UpperAssembly,
        Family::OriginCop,
        Family::GridCopLoose,
        Family::TailCop,
        Family::TailUpperAssembly,
        Family::TailChase,
        Family::TailVsHub,
        Family::TailVsGrid,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::XAxisCop => "x-axis-cop",
            Family::YAxisCop => "y-axis-cop",
            Family::DiagonalPair => "diagonal-pair",
            Family::UpperAssembly => "upper-assembly",
            Family::OriginCop => "origin-cop",
            Family::GridCopLoose => "grid-cop-loose",
            Family::TailCop => "tail-cop",
            Family::TailUpperAssembly => "tail-upper-assembly",
            Family::TailChase => "tail-chase",
            Family::TailVsHub => "tail-vs-hub",
            Family::TailVsGrid => "tail-vs-grid",
        }
    }

    pub fn from_name(s: &str) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.name() == s)
    }

    /// The statement this family audits on `g`.
    pub fn claim_id(self, g: &SymbolicGraph) -> ClaimId {
        let tail = g.tail_n() > 0;
        match self {
            Family::XAxisCop | Family::YAxisCop if !g.diagonal_edges() => ClaimId::NoDiagonalAxisCops,
            Family::XAxisCop => ClaimId::XAxisCop,
            Family::YAxisCop => ClaimId::YAxisCop,
            Family::DiagonalPair if tail => ClaimId::DiagonalPairWithTail,
            Family::DiagonalPair => ClaimId::DiagonalPair,
            Family::UpperAssembly => ClaimId::UpperAssembly,
            Family::OriginCop => ClaimId::OriginCop,
            Family::GridCopLoose if tail => ClaimId::GridCopWithTail,
            Family::GridCopLoose => ClaimId::IsolatedCop,
            Family::TailCop => ClaimId::TailCop,
            Family::TailUpperAssembly => ClaimId::TailUpperAssembly,
            Family::TailChase => ClaimId::TailChase,
            Family::TailVsHub => ClaimId::TailVsHub,
            Family::TailVsGrid => ClaimId::TailVsGrid,
        }
    }

    /// Whether the family applies to graphs shaped like `g` at all.
    pub fn applies_to(self, g: &SymbolicGraph) -> bool {
        let tail = g.tail_n() > 0;
        match self {
            Family::DiagonalPair => g.diagonal_edges(),
            Family::TailCop
            | Family::TailUpperAssembly
            | Family::TailChase
            | Family::TailVsHub
            | Family::TailVsGrid => tail,
            _ => true,
        }
    }

    /// Checks the hypotheses on `(u, v)` and returns the proven rank.
    pub fn rank(self, g: &SymbolicGraph, u: &SymVertex, v: &SymVertex) -> Result<Ordinal, SymbolicError> {
        g.check(u)?;
        g.check(v)?;
        let fail = |clause: &str| Err(hypothesis(self, u, v, clause));
        if u == v {
            return fail("u and v must be distinct");
        }
        let n = g.tail_n();
        match self {
            Family::XAxisCop => {
                let (SymVertex::Grid(a, b), SymVertex::Grid(xi, z)) = (u, v) else {
                    return fail("grid vertices required");
                };
                if !z.is_zero() {
                    return fail("v must lie on the x-axis");
                }
                let ok_low = if g.diagonal_edges() { b < a } else { b <= a };
                if !ok_low || a >= xi {
                    return fail(if g.diagonal_edges() { "need b < a < xi" } else { "need b <= a < xi" });
                }
                Ok(b.max(&Ordinal::one()).clone())
            }
            Family::YAxisCop => Family::XAxisCop
                .rank(g, &u.swapped(), &v.swapped())
                .map_err(|_| hypothesis(self, u, v, "mirror of the x-axis hypotheses fails")),
            Family::DiagonalPair => {
                if !g.diagonal_edges() {
                    return fail("needs diagonal edges");
                }
                match (u, v) {
                    (SymVertex::Grid(a, _), SymVertex::Grid(..)) if u.is_diagonal() && v.is_diagonal() => {
                        Ok(diagonal_pair_rank(g, a).0)
                    }
                    _ => fail("both vertices must be diagonal"),
                }
            }
            Family::UpperAssembly => match (u, v) {
                (SymVertex::Grid(..), SymVertex::Grid(..)) => Ok(g.gamma().clone()),
                _ => fail("grid vertices required"),
            },
            Family::OriginCop => match u {
                SymVertex::Grid(a, b) if v.is_origin() => Ok(a.max(b).plus(2)),
                _ => fail("grid robber and cop at (0,0) required"),
            },
            Family::GridCopLoose => match v {
                SymVertex::Grid(..) => Ok(gamma_plus(g, 1)),
                _ => fail("grid cop required"),
            },
            Family::TailCop => match v {
                SymVertex::Tail(i) => Ok(gamma_plus(g, i - 1)),
                _ => fail("cop on the tail required"),
            },
            Family::TailUpperAssembly => {
                if n == 0 {
                    return fail("graph has no tail");
                }
                Ok(gamma_plus(g, n))
            }
            Family::TailChase => match (u, v.path_index()) {
                (SymVertex::Tail(i), Some(j)) if j < *i => Ok(Ordinal::finite(n + 1 - j)),
                _ => fail("robber on the tail behind a path cop required"),
            },
            Family::TailVsHub => {
                if !matches!(u, SymVertex::Tail(_)) {
                    return fail("robber on the tail required");
                }
                if !g.sees(v, &SymVertex::origin()) {
                    return fail("(0,0) must lie in N[v]");
                }
                Ok(Ordinal::finite(n + 2))
            }
            Family::TailVsGrid => match (u, v) {
                (SymVertex::Tail(i), SymVertex::Grid(..)) if *i >= 2 => Ok(Ordinal::finite(n + 3)),
                _ => fail("robber on (-i,0), i >= 2, and grid cop required"),
            },
        }
    }

    /// The cop's reply to the robber moving to `x ∈ N[u]`.
    pub fn witness(
        self,
        g: &SymbolicGraph,
        u: &SymVertex,
        v: &SymVertex,
        x: &SymVertex,
    ) -> Result<Witness, SymbolicError> {
        self.rank(g, u, v)?;
        g.check(x)?;
        if !g.sees(u, x) {
            return Err(hypothesis(self, u, v, &format!("challenge {x} not in N[u]")));
        }
        if g.sees(v, x) {
            return Ok(Witness::equal(x));
        }
        let fail = |clause: &str| Err(hypothesis(self, u, v, clause));
        let n = g.tail_n();
        match self {
            Family::XAxisCop => {
                let SymVertex::Grid(a0, b0) = x else { return fail("tail challenge") };
                Ok(Witness {
                    y: SymVertex::Grid(a0.successor(), Ordinal::zero()),
                    rank: b0.max(&Ordinal::one()).clone(),
                    family: Some(Family::XAxisCop),
                })
            }
            Family::YAxisCop => {
                let w = Family::XAxisCop.witness(g, &u.swapped(), &v.swapped(), &x.swapped())?;
                Ok(Witness {
                    y: w.y.swapped(),
                    rank: w.rank,
                    family: w.family.map(|_| Family::YAxisCop),
                })
            }
            Family::DiagonalPair => match x {
                SymVertex::Tail(_) => hub_reply(g, v).ok_or(()).or_else(|_| fail("(0,0) not in N[v]")),
                SymVertex::Grid(..) if x.is_diagonal() => fail("diagonal challenge outside N[v]"),
                SymVertex::Grid(..) => axis_reply(g, v, x).ok_or(()).or_else(|_| fail("no axis reply")),
            },
            Family::UpperAssembly => grid_reply(self, g, u, v, x),
            Family::OriginCop => match x {
                SymVertex::Grid(..) => axis_reply(g, v, x).ok_or(()).or_else(|_| fail("no axis reply")),
                SymVertex::Tail(_) => fail("tail challenge"),
            },
            Family::GridCopLoose => {
                if let SymVertex::Tail(_) = x {
                    return tail_reply(g, v).ok_or(()).or_else(|_| fail("no hub reply"));
                }
                if g.diagonal_edges() && x.is_diagonal() && g.is_diagonal_isolated(v) {
                    let SymVertex::Grid(_, q) = v else { unreachable!("grid cop") };
                    return Ok(Witness {
                        y: SymVertex::Grid(Ordinal::zero(), q.successor()),
                        rank: g.gamma().clone(),
                        family: Some(Family::UpperAssembly),
                    });
                }
                grid_reply(self, g, u, v, x)
            }
            Family::TailCop => {
                let SymVertex::Tail(i) = v else { unreachable!("checked by rank") };
                if *i == 1 {
                    let y = SymVertex::origin();
                    let family = match x {
                        SymVertex::Grid(..) => Family::OriginCop,
                        SymVertex::Tail(_) => Family::TailChase,
                    };
                    let rank = family.rank(g, x, &y)?;
                    Ok(Witness { y, rank, family: Some(family) })
                } else {
                    Ok(Witness {
                        y: SymVertex::Tail(i - 1),
                        rank: gamma_plus(g, i - 2),
                        family: Some(Family::TailCop),
                    })
                }
            }
            Family::TailUpperAssembly => match v {
                SymVertex::Tail(_) => Family::TailCop.witness(g, u, v, x),
                SymVertex::Grid(..) => Family::GridCopLoose.witness(g, u, v, x),
            },
            Family::TailChase => {
                let j = v.path_index().expect("checked by rank");
                Ok(Witness {
                    y: SymVertex::Tail(j + 1),
                    rank: Ordinal::finite(n - j),
                    family: Some(Family::TailChase),
                })
            }
            Family::TailVsHub | Family::TailVsGrid => {
                tail_reply(g, v).ok_or(()).or_else(|_| fail("no hub reply"))
            }
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A cop reply: move to `y`, continuing with `x ≤_rank y` proven by `family`
/// (`None` when `y = x`, rank 0).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub y: SymVertex,
    pub rank: Ordinal,
    pub family: Option<Family>,
}

impl Witness {
    fn equal(x: &SymVertex) -> Self {
        Witness { y: x.clone(), rank: Ordinal::zero(), family: None }
    }
}

fn hypothesis(family: Family, u: &SymVertex, v: &SymVertex, clause: &str) -> SymbolicError {
    SymbolicError::Hypothesis { family: family.name().to_string(), u: u.to_string(), v: v.to_string(), clause: clause.to_string() }
}

/// Off-diagonal grid robber `x = (α₀,β₀)`: jump ahead on the axis of its
/// larger coordinate. With diagonal edges off, diagonal robbers use the x-axis.
fn axis_reply(g: &SymbolicGraph, v: &SymVertex, x: &SymVertex) -> Option<Witness> {
    let SymVertex::Grid(a0, b0) = x else { return None };
    let rank = a0.min(b0).max(&Ordinal::one()).clone();
    if a0 > b0 || (a0 == b0 && !g.diagonal_edges()) {
        let xi = g.x_axis_reach(v, a0)?;
        Some(Witness { y: SymVertex::Grid(xi, Ordinal::zero()), rank, family: Some(Family::XAxisCop) })
    } else if a0 < b0 {
        let xi = g.y_axis_reach(v, b0)?;
        Some(Witness { y: SymVertex::Grid(Ordinal::zero(), xi), rank, family: Some(Family::YAxisCop) })
    } else {
        None
    }
}

/// Robber on the tail, grid cop: go to the origin if possible, else to an
/// axis vertex that sees it.
fn tail_reply(g: &SymbolicGraph, v: &SymVertex) -> Option<Witness> {
    if let Some(w) = hub_reply(g, v) {
        return Some(w);
    }
    let SymVertex::Grid(_, q) = v else { return None };
    Some(Witness {
        y: SymVertex::Grid(Ordinal::zero(), q.successor()),
        rank: Ordinal::finite(g.tail_n() + 2),
        family: Some(Family::TailVsHub),
    })
}

fn hub_reply(g: &SymbolicGraph, v: &SymVertex) -> Option<Witness> {
    let origin = SymVertex::origin();
    g.sees(v, &origin).then(|| Witness {
        y: origin,
        rank: Ordinal::finite(g.tail_n() + 1),
        family: Some(Family::TailChase),
    })
}

/// Grid cop answering a robber move, as in the `γ` upper bound: diagonal
/// robbers are met on the diagonal, the rest on an axis.
fn grid_reply(
    family: Family,
    g: &SymbolicGraph,
    u: &SymVertex,
    v: &SymVertex,
    x: &SymVertex,
) -> Result<Witness, SymbolicError> {
    let fail = |clause: &str| hypothesis(family, u, v, clause);
    match x {
        SymVertex::Tail(_) => tail_reply(g, v).ok_or_else(|| fail("no hub reply")),
        SymVertex::Grid(a0, _) if x.is_diagonal() && g.diagonal_edges() => {
            let y = g.least_diagonal_in(v).ok_or_else(|| fail("no diagonal vertex in N[v]"))?;
            let rank = diagonal_pair_rank(g, a0).0;
            Ok(Witness { y, rank, family: Some(Family::DiagonalPair) })
        }
        SymVertex::Grid(..) => axis_reply(g, v, x).ok_or_else(|| fail("no axis reply")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    fn v(s: &str) -> SymVertex {
        s.parse().unwrap()
    }

    fn graph(gamma: &str, n: u64) -> SymbolicGraph {
        SymbolicGraph::new(o(gamma), n, true).unwrap()
    }

    #[test]
    fn x_axis_witness() {
        let g = graph("w", 0);
        let w = Family::XAxisCop.witness(&g, &v("(3,2)"), &v("(9,0)"), &v("(12,1)")).unwrap();
        assert_eq!(w.y, v("(13,0)"));
        assert_eq!(w.rank, o("1"));
    }

    #[test]
    fn challenge_in_cop_neighbourhood_is_matched() {
        let g = graph("w", 0);
        let w = Family::XAxisCop.witness(&g, &v("(3,2)"), &v("(9,0)"), &v("(4,0)")).unwrap();
        assert_eq!(w, Witness::equal(&v("(4,0)")));
    }

    #[test]
    fn diagonal_pair_witness() {
        let g = graph("w^2", 0);
        let w = Family::DiagonalPair.witness(&g, &v("(w,w)"), &v("(2,2)"), &v("(w+1,3)")).unwrap();
        assert_eq!(w.y, v("(w+2,0)"));
        assert_eq!(w.rank, o("3"));
    }

    #[test]
    fn y_axis_is_the_mirror() {
        let g = graph("w", 0);
        let w = Family::YAxisCop.witness(&g, &v("(2,3)"), &v("(0,9)"), &v("(1,12)")).unwrap();
        assert_eq!(w.y, v("(0,13)"));
        assert_eq!(w.family, Some(Family::YAxisCop));
    }

    #[test]
    fn hypotheses_are_named() {
        let g = graph("w", 0);
        let err = Family::XAxisCop.rank(&g, &v("(2,3)"), &v("(9,0)")).unwrap_err();
        assert!(err.to_string().contains("b < a < xi"), "{err}");
        assert!(Family::TailUpperAssembly.rank(&g, &v("(1,0)"), &v("(0,1)")).is_err());
    }

    #[test]
    fn assembly_breaks_on_isolated_cop() {
        let g = graph("w", 0);
        let err = Family::UpperAssembly.witness(&g, &v("(5,5)"), &v("(2,3)"), &v("(5,5)")).unwrap_err();
        assert!(err.to_string().contains("no diagonal vertex"), "{err}");
        let w = Family::GridCopLoose.witness(&g, &v("(5,5)"), &v("(2,3)"), &v("(5,5)")).unwrap();
        assert_eq!(w.y, v("(0,4)"));
        assert_eq!(w.rank, o("w"));
    }

    #[test]
    fn tail_cop_steps_toward_origin() {
        let g = graph("w", 2);
        let w = Family::TailCop.witness(&g, &v("(4,4)"), &v("T(2)"), &v("(5,5)")).unwrap();
        assert_eq!(w.y, v("T(1)"));
        assert_eq!(w.rank, o("w"));
        let w = Family::TailCop.witness(&g, &v("(4,4)"), &v("T(1)"), &v("(5,5)")).unwrap();
        assert_eq!((w.y, w.rank), (v("(0,0)"), o("7")));
    }
}
