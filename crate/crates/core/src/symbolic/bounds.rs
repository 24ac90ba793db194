//! Closed-form intervals for `η(u,v)` on the symbolic families.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::graph::{SymVertex, SymbolicGraph};
use super::SymbolicError;
use crate::ordinal::Ordinal;

/// Every bound-producing statement, named by role.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClaimId {
    Equality,
    Distinct,
    // Grid family upper bounds.
    XAxisCop,
    YAxisCop,
    DiagonalPair,
    UpperAssembly,
    // Lower bounds and exact values.
    MinCoordinate,
    DiagonalRobber,
    LimitRho,
    CopWinStrategy,
    // Tail family.
    DiagonalPairWithTail,
    OriginCop,
    GridCopWithTail,
    TailCop,
    TailUpperAssembly,
    MinCoordinateWithTail,
    TailPair,
    SuccessorRho,
    // Variant without diagonal edges.
    NoDiagonalAxisCops,
    NoDiagonalLower,
    NoDiagonalRho,
    // Filled-in cases the statements above leave open.
    IsolatedCop,
    TailChase,
    TailVsHub,
    TailVsGrid,
}

impl ClaimId {
    pub const ALL: [ClaimId; 25] = [
        ClaimId::Equality,
        ClaimId::Distinct,
        ClaimId::XAxisCop,
        ClaimId::YAxisCop,
        ClaimId::DiagonalPair,
        ClaimId::UpperAssembly,
        ClaimId::MinCoordinate,
        ClaimId::DiagonalRobber,
        ClaimId::LimitRho,
        ClaimId::CopWinStrategy,
        ClaimId::DiagonalPairWithTail,
        ClaimId::OriginCop,
        ClaimId::GridCopWithTail,
        ClaimId::TailCop,
        ClaimId::TailUpperAssembly,
        ClaimId::MinCoordinateWithTail,
        ClaimId::TailPair,
        ClaimId::SuccessorRho,
        ClaimId::NoDiagonalAxisCops,
        ClaimId::NoDiagonalLower,
        ClaimId::NoDiagonalRho,
        ClaimId::IsolatedCop,
        ClaimId::TailChase,
        ClaimId::TailVsHub,
        ClaimId::TailVsGrid,
    ];

    /// The published statements the coverage ledger must account for.
    pub const PUBLISHED: [ClaimId; 19] = [
        ClaimId::XAxisCop,
        ClaimId::YAxisCop,
        ClaimId::DiagonalPair,
        ClaimId::UpperAssembly,
        ClaimId::MinCoordinate,
        ClaimId::DiagonalRobber,
        ClaimId::LimitRho,
        ClaimId::CopWinStrategy,
        ClaimId::DiagonalPairWithTail,
        ClaimId::OriginCop,
        ClaimId::GridCopWithTail,
        ClaimId::TailCop,
        ClaimId::TailUpperAssembly,
        ClaimId::MinCoordinateWithTail,
        ClaimId::TailPair,
        ClaimId::SuccessorRho,
        ClaimId::NoDiagonalAxisCops,
        ClaimId::NoDiagonalLower,
        ClaimId::NoDiagonalRho,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClaimId::Equality => "equality",
            ClaimId::Distinct => "distinct",
            ClaimId::XAxisCop => "x-axis-cop",
            ClaimId::YAxisCop => "y-axis-cop",
            ClaimId::DiagonalPair => "diagonal-pair",
            ClaimId::UpperAssembly => "upper-assembly",
            ClaimId::MinCoordinate => "min-coordinate",
            ClaimId::DiagonalRobber => "diagonal-robber",
            ClaimId::LimitRho => "limit-rho",
            ClaimId::CopWinStrategy => "cop-win-strategy",
            ClaimId::DiagonalPairWithTail => "diagonal-pair-with-tail",
            ClaimId::OriginCop => "origin-cop",
            ClaimId::GridCopWithTail => "grid-cop-with-tail",
            ClaimId::TailCop => "tail-cop",
            ClaimId::TailUpperAssembly => "tail-upper-assembly",
            ClaimId::MinCoordinateWithTail => "min-coordinate-with-tail",
            ClaimId::TailPair => "tail-pair",
            ClaimId::SuccessorRho => "successor-rho",
            ClaimId::NoDiagonalAxisCops => "no-diagonal-axis-cops",
            ClaimId::NoDiagonalLower => "no-diagonal-lower",
            ClaimId::NoDiagonalRho => "no-diagonal-rho",
            ClaimId::IsolatedCop => "isolated-cop",
            ClaimId::TailChase => "tail-chase",
            ClaimId::TailVsHub => "tail-vs-hub",
            ClaimId::TailVsGrid => "tail-vs-grid",
        }
    }
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrdinalBound {
    pub lower: Ordinal,
    pub upper: Ordinal,
    pub exact: bool,
    pub lower_source: ClaimId,
    pub upper_source: ClaimId,
}

struct Acc {
    lower: (Ordinal, ClaimId),
    upper: Option<(Ordinal, ClaimId)>,
}

impl Acc {
    fn lower(&mut self, value: Ordinal, source: ClaimId) {
        if value > self.lower.0 {
            self.lower = (value, source);
        }
    }

    fn upper(&mut self, value: Ordinal, source: ClaimId) {
        if self.upper.as_ref().map_or(true, |(u, _)| value < *u) {
            self.upper = Some((value, source));
        }
    }
}

/// `γ + k`.
pub(crate) fn gamma_plus(g: &SymbolicGraph, k: u64) -> Ordinal {
    g.gamma().plus(k)
}

/// Tightest interval for `η(u,v)` the proven statements give.
///
/// `exact` is set exactly when the two ends meet.
pub fn eta_bounds(g: &SymbolicGraph, u: &SymVertex, v: &SymVertex) -> Result<OrdinalBound, SymbolicError> {
    g.check(u)?;
    g.check(v)?;
    if u == v {
        return Ok(OrdinalBound {
            lower: Ordinal::zero(),
            upper: Ordinal::zero(),
            exact: true,
            lower_source: ClaimId::Equality,
            upper_source: ClaimId::Equality,
        });
    }
    let n = g.tail_n();
    let diag = g.diagonal_edges();
    let mut acc = Acc { lower: (Ordinal::one(), ClaimId::Distinct), upper: None };

    // Lower bounds.
    if let SymVertex::Grid(a, b) = u {
        let src = match (diag, n) {
            (false, _) => ClaimId::NoDiagonalLower,
            (true, 0) => ClaimId::MinCoordinate,
            _ => ClaimId::MinCoordinateWithTail,
        };
        acc.lower(a.min(b).clone(), src);
    }
    if diag && u.is_diagonal() && matches!(v, SymVertex::Grid(..)) && !v.is_diagonal() {
        acc.lower(g.gamma().clone(), ClaimId::DiagonalRobber);
    }
    if diag
        && g.is_diagonal_isolated(v)
        && (matches!(u, SymVertex::Tail(1)) || (matches!(u, SymVertex::Grid(..)) && g.meets_diagonal(u)))
    {
        acc.lower(gamma_plus(g, 1), ClaimId::IsolatedCop);
    }
    if let (Some(i), SymVertex::Tail(j)) = (u.path_index(), v) {
        if i < *j {
            acc.lower(gamma_plus(g, i), ClaimId::TailPair);
        }
    }
    if let (SymVertex::Tail(i), Some(j)) = (u, v.path_index()) {
        if *i > j {
            acc.lower(Ordinal::finite(n + 1 - j), ClaimId::TailChase);
        }
    }

    // Upper bounds.
    match v {
        SymVertex::Tail(j) => {
            acc.upper(gamma_plus(g, j - 1), ClaimId::TailCop);
            if let SymVertex::Tail(i) = u {
                if i > j {
                    acc.upper(Ordinal::finite(n + 1 - j), ClaimId::TailChase);
                }
            }
        }
        SymVertex::Grid(xi, de) => {
            match u {
                SymVertex::Grid(..) => {
                    if diag && g.is_diagonal_isolated(v) && g.meets_diagonal(u) {
                        acc.upper(gamma_plus(g, 1), ClaimId::IsolatedCop);
                    } else {
                        acc.upper(g.gamma().clone(), ClaimId::UpperAssembly);
                    }
                }
                SymVertex::Tail(1) => acc.upper(gamma_plus(g, 1), ClaimId::GridCopWithTail),
                SymVertex::Tail(_) => acc.upper(Ordinal::finite(n + 3), ClaimId::TailVsGrid),
            }
            if v.is_origin() {
                match u {
                    SymVertex::Grid(a, b) => acc.upper(a.max(b).plus(2), ClaimId::OriginCop),
                    SymVertex::Tail(_) => acc.upper(Ordinal::finite(n + 1), ClaimId::TailChase),
                }
            }
            if let SymVertex::Grid(a, b) = u {
                let axis_src = if diag { None } else { Some(ClaimId::NoDiagonalAxisCops) };
                let below = |lo: &Ordinal, hi: &Ordinal| if diag { lo < hi } else { lo <= hi };
                if de.is_zero() && below(b, a) && a < xi {
                    acc.upper(b.max(&Ordinal::one()).clone(), axis_src.unwrap_or(ClaimId::XAxisCop));
                }
                if xi.is_zero() && below(a, b) && b < de {
                    acc.upper(a.max(&Ordinal::one()).clone(), axis_src.unwrap_or(ClaimId::YAxisCop));
                }
                if diag && u.is_diagonal() && v.is_diagonal() {
                    let (rank, src) = diagonal_pair_rank(g, a);
                    acc.upper(rank, src);
                }
            }
        }
    }

    let (upper, upper_source) = acc.upper.expect("every cop vertex has an upper bound");
    let (lower, lower_source) = acc.lower;
    if lower > upper {
        return Err(SymbolicError::Inconsistent(format!(
            "eta({u},{v}): lower {lower} ({lower_source}) above upper {upper} ({upper_source})"
        )));
    }
    Ok(OrdinalBound { exact: lower == upper, lower, upper, lower_source, upper_source })
}

/// Rank of `(α,α) ≤ (ξ,ξ)` for distinct diagonal vertices.
pub(crate) fn diagonal_pair_rank(g: &SymbolicGraph, alpha: &Ordinal) -> (Ordinal, ClaimId) {
    let src = if g.tail_n() == 0 { ClaimId::DiagonalPair } else { ClaimId::DiagonalPairWithTail };
    if *alpha > Ordinal::one() {
        (alpha.clone(), src)
    } else if g.tail_n() == 0 {
        (Ordinal::finite(2), src)
    } else {
        (Ordinal::finite(g.tail_n() + 2), src)
    }
}

/// `ρ(G) = sup_v η(v)`.
///
/// With diagonal edges and no tail the value is `γ+1`, not `γ`: cops on
/// `(a,a+1)` or `(a+1,a)` see no diagonal vertex, so a robber on the
/// diagonal costs them one extra move (see [`ClaimId::IsolatedCop`]).
pub fn rho(g: &SymbolicGraph) -> Ordinal {
    rho_with_source(g).0
}

pub fn rho_with_source(g: &SymbolicGraph) -> (Ordinal, ClaimId) {
    match (g.tail_n(), g.diagonal_edges()) {
        (0, true) => (gamma_plus(g, 1), ClaimId::IsolatedCop),
        (0, false) => (g.gamma().clone(), ClaimId::NoDiagonalRho),
        (n, _) => (gamma_plus(g, n), ClaimId::SuccessorRho),
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

    fn graph(gamma: &str, n: u64, diag: bool) -> SymbolicGraph {
        SymbolicGraph::new(o(gamma), n, diag).unwrap()
    }

    #[test]
    fn diagonal_robber_is_exact() {
        let g = graph("w^2", 0, true);
        let b = eta_bounds(&g, &v("(w,w)"), &v("(3,7)")).unwrap();
        assert!(b.exact);
        assert_eq!(b.lower, o("w^2"));
    }

    #[test]
    fn tail_pair_is_exact() {
        let g = graph("w", 3, true);
        let b = eta_bounds(&g, &v("T(3)"), &v("T(4)")).unwrap();
        assert!(b.exact);
        assert_eq!(b.upper, o("w+3"));
    }

    #[test]
    fn axis_cop_rank_is_sharp() {
        let g = graph("w", 0, true);
        let b = eta_bounds(&g, &v("(3,2)"), &v("(9,0)")).unwrap();
        assert_eq!((b.lower.clone(), b.upper.clone()), (o("2"), o("2")));
        assert_eq!(b.upper_source, ClaimId::XAxisCop);
    }

    #[test]
    fn isolated_cop_costs_one_more() {
        let g = graph("w", 0, true);
        let b = eta_bounds(&g, &v("(5,5)"), &v("(2,3)")).unwrap();
        assert_eq!(b.lower, o("w+1"));
        assert!(b.exact);
        assert_eq!(rho(&g), o("w+1"));
    }

    #[test]
    fn rho_values() {
        assert_eq!(rho(&graph("w^2", 5, true)), o("w^2+5"));
        assert_eq!(rho(&graph("w^w", 0, false)), o("w^w"));
    }

    #[test]
    fn equality_and_errors() {
        let g = graph("w", 0, true);
        let b = eta_bounds(&g, &v("(2,2)"), &v("(2,2)")).unwrap();
        assert!(b.exact && b.upper.is_zero());
        assert!(eta_bounds(&g, &v("(w,0)"), &v("(1,1)")).is_err());
    }
}
