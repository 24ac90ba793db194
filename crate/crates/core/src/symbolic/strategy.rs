//! Cop and robber strategies on the symbolic graphs.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::bounds::eta_bounds;
use super::graph::{SymVertex, SymbolicGraph};
use super::SymbolicError;
use crate::ordinal::Ordinal;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Phase {
    ToDiagonal,
    XAxisChase,
    YAxisChase,
    TailChase,
    Captured,
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Phase::ToDiagonal => "to-diagonal",
            Phase::XAxisChase => "x-axis-chase",
            Phase::YAxisChase => "y-axis-chase",
            Phase::TailChase => "tail-chase",
            Phase::Captured => "captured",
        })
    }
}

fn hypothesis(which: &str, u: &SymVertex, v: &SymVertex, clause: impl Into<String>) -> SymbolicError {
    SymbolicError::Hypothesis { family: which.into(), u: u.to_string(), v: v.to_string(), clause: clause.into() }
}

/// The constructive cop: reach the diagonal, jump ahead on the axis of the
/// robber's larger coordinate, then keep jumping ahead while the robber's
/// other coordinate decreases. Capture whenever possible.
pub fn cop_strategy(
    g: &SymbolicGraph,
    cop: &SymVertex,
    robber: &SymVertex,
    phase: Phase,
) -> Result<(SymVertex, Phase), SymbolicError> {
    g.check(cop)?;
    g.check(robber)?;
    if cop == robber || phase == Phase::Captured {
        return Err(SymbolicError::AlreadyCaptured);
    }
    if g.sees(cop, robber) {
        return Ok((robber.clone(), Phase::Captured));
    }
    let toward_diagonal = |cop: &SymVertex| -> (SymVertex, Phase) {
        match cop {
            SymVertex::Tail(j) => (SymVertex::on_path(j - 1), Phase::ToDiagonal),
            SymVertex::Grid(_, q) => match g.least_diagonal_in(cop) {
                Some(d) if g.diagonal_edges() => (d, Phase::ToDiagonal),
                // Only (a,a+1) and (a+1,a) see no diagonal vertex: take the axis first.
                _ => (SymVertex::Grid(Ordinal::zero(), q.successor()), Phase::ToDiagonal),
            },
        }
    };
    match (robber, cop) {
        (SymVertex::Tail(i), _) => match cop.path_index() {
            Some(j) if j < *i => Ok((SymVertex::on_path(j + 1), Phase::TailChase)),
            Some(j) => Ok((SymVertex::on_path(j - 1), Phase::TailChase)),
            None => {
                let SymVertex::Grid(_, q) = cop else { unreachable!("tail cops have a path index") };
                let origin = SymVertex::origin();
                if g.sees(cop, &origin) {
                    Ok((origin, Phase::TailChase))
                } else {
                    Ok((SymVertex::Grid(Ordinal::zero(), q.successor()), Phase::TailChase))
                }
            }
        },
        (SymVertex::Grid(..), SymVertex::Tail(_)) => Ok(toward_diagonal(cop)),
        (SymVertex::Grid(a, b), SymVertex::Grid(p, q)) => {
            let chasing = !g.diagonal_edges()
                || cop.is_diagonal()
                || (phase == Phase::XAxisChase && q.is_zero())
                || (phase == Phase::YAxisChase && p.is_zero());
            if !chasing {
                return Ok(toward_diagonal(cop));
            }
            if a > b || (a == b && !g.diagonal_edges()) {
                let xi = g.x_axis_reach(cop, a).expect("grid cop");
                Ok((SymVertex::Grid(xi, Ordinal::zero()), Phase::XAxisChase))
            } else if a < b {
                let xi = g.y_axis_reach(cop, b).expect("grid cop");
                Ok((SymVertex::Grid(Ordinal::zero(), xi), Phase::YAxisChase))
            } else {
                Ok(toward_diagonal(cop))
            }
        }
    }
}

/// Escape from a grid robber `u = (α,β)`, `α, β ≥ 2`, with budget `μ < min(α,β)`.
///
/// Case 1 (`ξ > α` or `δ < β`, cop at `(ξ,δ)`): `(ξ, μ)` when also `δ ≥ β`,
/// else `(max(α,ξ,μ,δ)+1, max(μ,δ))` with second coordinate 1 when `δ = μ = 0`.
/// Case 2 (otherwise): `(μ, δ)` when `ξ = α`, else `(max(μ,ξ), max(δ,μ,ξ)+1)`
/// with first coordinate 1 when `ξ = μ = 0`. A cop on the tail is ignored.
pub fn escape_min_coordinate(
    g: &SymbolicGraph,
    mu: &Ordinal,
    u: &SymVertex,
    v: &SymVertex,
) -> Result<SymVertex, SymbolicError> {
    const NAME: &str = "min-coordinate-robber";
    g.check(u)?;
    g.check(v)?;
    let SymVertex::Grid(alpha, beta) = u else {
        return Err(hypothesis(NAME, u, v, "robber must be on the grid"));
    };
    let two = Ordinal::finite(2);
    if *alpha < two || *beta < two {
        return Err(hypothesis(NAME, u, v, "both robber coordinates must be at least 2"));
    }
    if mu >= alpha.min(beta) {
        return Err(hypothesis(NAME, u, v, format!("budget {mu} not below min(a,b)")));
    }
    if u == v {
        return Err(hypothesis(NAME, u, v, "robber and cop coincide"));
    }
    let SymVertex::Grid(xi, delta) = v else {
        return Ok(u.clone());
    };
    let one = Ordinal::one();
    let out = if xi > alpha || delta < beta {
        if xi > alpha && delta >= beta {
            SymVertex::Grid(xi.clone(), mu.clone())
        } else {
            let a = alpha.max(xi).max(mu).max(delta).successor();
            let b = if delta.is_zero() && mu.is_zero() { one } else { mu.max(delta).clone() };
            SymVertex::Grid(a, b)
        }
    } else if xi == alpha {
        SymVertex::Grid(mu.clone(), delta.clone())
    } else {
        let a = if xi.is_zero() && mu.is_zero() { one } else { mu.max(xi).clone() };
        let b = delta.max(mu).max(xi).successor();
        SymVertex::Grid(a, b)
    };
    Ok(out)
}

/// Diagonal robber against an off-diagonal grid cop: the least `(d,d)`,
/// `d > μ`, outside `N[v]`.
pub fn escape_diagonal(
    g: &SymbolicGraph,
    mu: &Ordinal,
    u: &SymVertex,
    v: &SymVertex,
) -> Result<SymVertex, SymbolicError> {
    const NAME: &str = "diagonal-robber";
    g.check(u)?;
    g.check(v)?;
    if !g.diagonal_edges() {
        return Err(hypothesis(NAME, u, v, "needs diagonal edges"));
    }
    if !u.is_diagonal() {
        return Err(hypothesis(NAME, u, v, "robber must be on the diagonal"));
    }
    let SymVertex::Grid(p, q) = v else {
        return Err(hypothesis(NAME, u, v, "cop must be on the grid"));
    };
    if p == q {
        return Err(hypothesis(NAME, u, v, "cop must be off the diagonal"));
    }
    if mu >= g.gamma() {
        return Err(hypothesis(NAME, u, v, format!("budget {mu} not below gamma")));
    }
    let (lo, hi) = if p < q { (p, q) } else { (q, p) };
    let d = mu.successor();
    let d = if *lo < d && d < *hi { hi.clone() } else { d };
    Ok(SymVertex::Grid(d.clone(), d))
}

/// Robber at path index `i` against a tail cop further out at `j > i`:
/// step toward the grid, and from `(0,0)` onto `(m,m)`, `m = max(μ,1)`.
pub fn escape_tail_pair(
    g: &SymbolicGraph,
    mu: &Ordinal,
    u: &SymVertex,
    v: &SymVertex,
) -> Result<SymVertex, SymbolicError> {
    const NAME: &str = "tail-pair-robber";
    g.check(u)?;
    g.check(v)?;
    let (Some(i), SymVertex::Tail(j)) = (u.path_index(), v) else {
        return Err(hypothesis(NAME, u, v, "robber on the path, cop on the tail required"));
    };
    if i >= *j {
        return Err(hypothesis(NAME, u, v, "cop must be further out on the tail"));
    }
    if i > 0 {
        return Ok(SymVertex::on_path(i - 1));
    }
    if mu >= g.gamma() {
        return Err(hypothesis(NAME, u, v, format!("budget {mu} not below gamma")));
    }
    let m = mu.max(&Ordinal::one()).clone();
    Ok(SymVertex::Grid(m.clone(), m))
}

/// Budgeted robber: picks the escape for the case `(u, v)` falls in and
/// checks it lies in `N[u] \ N[v]`.
pub fn robber_strategy(
    g: &SymbolicGraph,
    mu: &Ordinal,
    u: &SymVertex,
    v: &SymVertex,
) -> Result<SymVertex, SymbolicError> {
    g.check(u)?;
    g.check(v)?;
    if u == v {
        return Err(hypothesis("robber", u, v, "robber and cop coincide"));
    }
    let tail_pair = matches!((u.path_index(), v), (Some(i), SymVertex::Tail(j)) if i < *j);
    let x = if tail_pair {
        escape_tail_pair(g, mu, u, v)?
    } else if g.diagonal_edges() && u.is_diagonal() && matches!(v, SymVertex::Grid(..)) && !v.is_diagonal() {
        escape_diagonal(g, mu, u, v)?
    } else if matches!(u, SymVertex::Grid(..)) {
        escape_min_coordinate(g, mu, u, v)?
    } else {
        return Err(hypothesis("robber", u, v, "no escape case applies"));
    };
    if !g.sees(u, &x) || g.sees(v, &x) {
        return Err(SymbolicError::Inconsistent(format!("escape {x} from {u} against {v} is not in N[u] \\ N[v]")));
    }
    Ok(x)
}

/// Greedy cop: among the given candidate moves, minimise the bound on the
/// robber's remaining time (upper, then lower, then canonical order).
pub fn greedy_move(
    g: &SymbolicGraph,
    robber: &SymVertex,
    candidates: &[SymVertex],
) -> Result<SymVertex, SymbolicError> {
    let mut best: Option<(Ordinal, Ordinal, &SymVertex)> = None;
    for y in candidates {
        let b = eta_bounds(g, robber, y)?;
        let key = (b.upper, b.lower, y);
        if best.as_ref().map_or(true, |cur| key < *cur) {
            best = Some(key);
        }
    }
    best.map(|(_, _, y)| y.clone()).ok_or_else(|| SymbolicError::Inconsistent("no candidate moves".into()))
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
    fn cop_moves() {
        let g = graph("w", 0);
        let (m, p) = cop_strategy(&g, &v("(4,9)"), &v("(1,2)"), Phase::ToDiagonal).unwrap();
        assert_eq!((m, p), (v("(5,5)"), Phase::ToDiagonal));
        let (m, p) = cop_strategy(&g, &v("(6,0)"), &v("(9,4)"), Phase::XAxisChase).unwrap();
        assert_eq!((m, p), (v("(10,0)"), Phase::XAxisChase));
        let (m, p) = cop_strategy(&g, &v("(6,0)"), &v("(5,4)"), Phase::XAxisChase).unwrap();
        assert_eq!((m, p), (v("(5,4)"), Phase::Captured));
        assert!(cop_strategy(&g, &v("(1,1)"), &v("(1,1)"), Phase::ToDiagonal).is_err());
    }

    #[test]
    fn isolated_cop_takes_the_axis() {
        let g = graph("w", 0);
        let (m, _) = cop_strategy(&g, &v("(3,4)"), &v("(9,9)"), Phase::ToDiagonal).unwrap();
        assert_eq!(m, v("(0,5)"));
    }

    #[test]
    fn tail_cop_walks_the_path() {
        let g = graph("w", 2);
        assert_eq!(cop_strategy(&g, &v("T(3)"), &v("(4,4)"), Phase::ToDiagonal).unwrap().0, v("T(2)"));
        assert_eq!(cop_strategy(&g, &v("(0,0)"), &v("T(3)"), Phase::ToDiagonal).unwrap().0, v("T(1)"));
        assert_eq!(cop_strategy(&g, &v("(3,4)"), &v("T(2)"), Phase::ToDiagonal).unwrap().0, v("(0,5)"));
    }

    #[test]
    fn min_coordinate_escapes() {
        let g = graph("w", 0);
        // The proof's second subcase applies here since the cop is below on b.
        assert_eq!(robber_strategy(&g, &o("4"), &v("(5,7)"), &v("(9,2)")).unwrap(), v("(10,4)"));
        assert_eq!(robber_strategy(&g, &o("4"), &v("(5,7)"), &v("(9,8)")).unwrap(), v("(9,4)"));
        assert_eq!(robber_strategy(&g, &o("0"), &v("(5,7)"), &v("(0,9)")).unwrap(), v("(1,10)"));
        assert!(robber_strategy(&g, &o("5"), &v("(5,7)"), &v("(9,2)")).is_err());
    }

    #[test]
    fn diagonal_and_tail_escapes() {
        let g = graph("w^2", 0);
        assert_eq!(robber_strategy(&g, &o("w"), &v("(w,w)"), &v("(3,8)")).unwrap(), v("(w+1,w+1)"));
        assert_eq!(robber_strategy(&g, &o("4"), &v("(w,w)"), &v("(3,8)")).unwrap(), v("(8,8)"));
        let g = graph("w", 1);
        assert_eq!(robber_strategy(&g, &o("6"), &v("(0,0)"), &v("T(1)")).unwrap(), v("(6,6)"));
        assert_eq!(robber_strategy(&g, &o("0"), &v("(0,0)"), &v("T(1)")).unwrap(), v("(1,1)"));
    }

    #[test]
    fn greedy_prefers_small_bounds() {
        let g = graph("w", 0);
        let m = greedy_move(&g, &v("(3,2)"), &[v("(0,0)"), v("(9,0)")]).unwrap();
        assert_eq!(m, v("(9,0)"));
    }
}
