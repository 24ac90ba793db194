//! Explicit counterexamples to `u ≤_γ v` when `v` sees no diagonal vertex.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::graph::{SymVertex, SymbolicGraph};
use super::sampler::{closed_neighbourhood_over, coordinate_strata, limit_points, random_below};
use super::strategy::escape_diagonal;
use super::SymbolicError;
use crate::ordinal::Ordinal;

/// The robber moves from `u` to the diagonal vertex `robber_move ∉ N[v]`.
/// Every cop reply `y ∈ N[v]` is off the diagonal, and against each sampled
/// reply the diagonal robber escapes for every sampled budget `μ < γ`, so
/// `η(robber_move, y) ≥ γ` and `η(u, v) ≥ γ + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsolatedCopRefutation {
    pub u: SymVertex,
    pub v: SymVertex,
    pub robber_move: SymVertex,
    pub replies_checked: usize,
    pub escapes_checked: usize,
}

pub fn refute_isolated_cop(
    g: &SymbolicGraph,
    u: &SymVertex,
    v: &SymVertex,
    rng: &mut impl Rng,
) -> Result<IsolatedCopRefutation, SymbolicError> {
    g.check(u)?;
    g.check(v)?;
    let fail = |clause: &str| SymbolicError::Hypothesis {
        family: "isolated-cop".into(),
        u: u.to_string(),
        v: v.to_string(),
        clause: clause.into(),
    };
    if !g.diagonal_edges() || !g.is_diagonal_isolated(v) {
        return Err(fail("cop must see no diagonal vertex"));
    }
    let robber_move = if u.is_diagonal() {
        u.clone()
    } else {
        g.least_diagonal_in(u).ok_or_else(|| fail("robber must see a diagonal vertex"))?
    };
    if !g.sees(u, &robber_move) || g.sees(v, &robber_move) {
        return Err(SymbolicError::Inconsistent(format!("{robber_move} is not in N[{u}] \\ N[{v}]")));
    }
    let coords = coordinate_strata(rng, g.gamma(), &[u, v], 8);
    let replies = closed_neighbourhood_over(g, v, &coords);
    let mut budgets: Vec<Ordinal> = (0..3).map(Ordinal::finite).collect();
    budgets.extend(limit_points(g.gamma()));
    budgets.extend((0..4).filter_map(|_| random_below(rng, g.gamma())));
    let mut escapes = 0;
    for y in &replies {
        if y.is_diagonal() {
            return Err(SymbolicError::Inconsistent(format!("diagonal reply {y} in N[{v}]")));
        }
        if matches!(y, SymVertex::Tail(_)) {
            continue;
        }
        for mu in &budgets {
            let x = escape_diagonal(g, mu, &robber_move, y)?;
            if !g.sees(&robber_move, &x) || g.sees(y, &x) {
                return Err(SymbolicError::Inconsistent(format!("escape {x} fails against {y}")));
            }
            escapes += 1;
        }
    }
    Ok(IsolatedCopRefutation {
        u: u.clone(),
        v: v.clone(),
        robber_move,
        replies_checked: replies.len(),
        escapes_checked: escapes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn isolated_cop_is_refuted() {
        let g = SymbolicGraph::new("w^2".parse().unwrap(), 0, true).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let r = refute_isolated_cop(&g, &"(4,0)".parse().unwrap(), &"(w,w+1)".parse().unwrap(), &mut rng).unwrap();
        assert_eq!(r.robber_move, "(0,0)".parse().unwrap());
        assert!(r.replies_checked > 10 && r.escapes_checked > 10);
        assert!(refute_isolated_cop(&g, &"(4,0)".parse().unwrap(), &"(w,w+2)".parse().unwrap(), &mut rng).is_err());
    }
}
