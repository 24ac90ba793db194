use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::SymbolicError;
use crate::ordinal::Ordinal;

/// A vertex of `G_γ` or `G_{γ+n}`: a grid point `(a, b)` or the tail vertex
/// `(-i, 0)`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum SymVertex {
    Grid(Ordinal, Ordinal),
    Tail(u64),
}

impl SymVertex {
    pub fn grid(a: impl Into<Ordinal>, b: impl Into<Ordinal>) -> Self {
        SymVertex::Grid(a.into(), b.into())
    }

    pub fn origin() -> Self {
        SymVertex::Grid(Ordinal::zero(), Ordinal::zero())
    }

    pub fn is_origin(&self) -> bool {
        matches!(self, SymVertex::Grid(a, b) if a.is_zero() && b.is_zero())
    }

    pub fn is_diagonal(&self) -> bool {
        matches!(self, SymVertex::Grid(a, b) if a == b)
    }

    pub fn coords(&self) -> Option<(&Ordinal, &Ordinal)> {
        match self {
            SymVertex::Grid(a, b) => Some((a, b)),
            SymVertex::Tail(_) => None,
        }
    }

    /// Position on the path `(0,0), (-1,0), …`: `Some(0)` for the origin,
    /// `Some(i)` for `(-i,0)`, `None` for other grid points.
    pub fn path_index(&self) -> Option<u64> {
        match self {
            SymVertex::Tail(i) => Some(*i),
            v if v.is_origin() => Some(0),
            _ => None,
        }
    }

    /// Inverse of [`SymVertex::path_index`].
    pub fn on_path(i: u64) -> Self {
        if i == 0 {
            SymVertex::origin()
        } else {
            SymVertex::Tail(i)
        }
    }

    /// Coordinate swap; tail vertices are fixed.
    pub fn swapped(&self) -> Self {
        match self {
            SymVertex::Grid(a, b) => SymVertex::Grid(b.clone(), a.clone()),
            t => t.clone(),
        }
    }
}

// Canonical order: tail by decreasing index, then grid lexicographic.
impl Ord for SymVertex {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (SymVertex::Tail(i), SymVertex::Tail(j)) => j.cmp(i),
            (SymVertex::Tail(_), SymVertex::Grid(..)) => Ordering::Less,
            (SymVertex::Grid(..), SymVertex::Tail(_)) => Ordering::Greater,
            (SymVertex::Grid(a0, b0), SymVertex::Grid(a1, b1)) => a0.cmp(a1).then_with(|| b0.cmp(b1)),
        }
    }
}

impl PartialOrd for SymVertex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SymVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymVertex::Grid(a, b) => write!(f, "({a},{b})"),
            SymVertex::Tail(i) => write!(f, "T({i})"),
        }
    }
}

impl fmt::Debug for SymVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<SymVertex> for String {
    fn from(v: SymVertex) -> String {
        v.to_string()
    }
}

impl TryFrom<String> for SymVertex {
    type Error = SymbolicError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

/// Parses `(a,b)` with ordinals in the `w` grammar, or `T(i)`.
impl FromStr for SymVertex {
    type Err = SymbolicError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |why: &str| SymbolicError::VertexParse(format!("{s:?}: {why}"));
        let t = s.trim();
        if let Some(rest) = t.strip_prefix("T(").or_else(|| t.strip_prefix("t(")) {
            let inner = rest.strip_suffix(')').ok_or_else(|| bad("missing `)`"))?;
            let i: u64 = inner.trim().parse().map_err(|_| bad("tail index must be a positive integer"))?;
            if i == 0 {
                return Err(bad("tail index starts at 1"));
            }
            return Ok(SymVertex::Tail(i));
        }
        let inner = t
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| bad("expected `(a,b)` or `T(i)`"))?;
        // Ordinals may contain parentheses, so split at the top-level comma.
        let mut depth = 0i32;
        let mut split = None;
        for (i, c) in inner.char_indices() {
            match c {
                '(' => depth += 1,
                ')' => depth -= 1,
                ',' if depth == 0 => {
                    if split.is_some() {
                        return Err(bad("more than two coordinates"));
                    }
                    split = Some(i);
                }
                _ => {}
            }
        }
        let p = split.ok_or_else(|| bad("expected two coordinates"))?;
        let a: Ordinal = inner[..p].trim().parse().map_err(|e| bad(&format!("first coordinate: {e}")))?;
        let b: Ordinal = inner[p + 1..].trim().parse().map_err(|e| bad(&format!("second coordinate: {e}")))?;
        Ok(SymVertex::Grid(a, b))
    }
}

/// `G_γ` (`tail_n = 0`), `G_{γ+n}` (`tail_n = n ≥ 1`, tail `(-1,0)…(-(n+1),0)`),
/// or the variant without diagonal edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolicGraph {
    gamma: Ordinal,
    tail_n: u64,
    diagonal_edges: bool,
}

impl SymbolicGraph {
    pub fn new(gamma: Ordinal, tail_n: u64, diagonal_edges: bool) -> Result<Self, SymbolicError> {
        if !gamma.is_limit() {
            return Err(SymbolicError::NotLimit(gamma.to_string()));
        }
        if !diagonal_edges && tail_n > 0 {
            return Err(SymbolicError::VariantWithTail);
        }
        Ok(SymbolicGraph { gamma, tail_n, diagonal_edges })
    }

    pub fn gamma(&self) -> &Ordinal {
        &self.gamma
    }

    pub fn tail_n(&self) -> u64 {
        self.tail_n
    }

    pub fn diagonal_edges(&self) -> bool {
        self.diagonal_edges
    }

    /// Number of tail vertices: `n + 1`, or 0 without a tail.
    pub fn tail_len(&self) -> u64 {
        if self.tail_n == 0 {
            0
        } else {
            self.tail_n + 1
        }
    }

    pub fn contains(&self, v: &SymVertex) -> bool {
        match v {
            SymVertex::Grid(a, b) => *a < self.gamma && *b < self.gamma,
            SymVertex::Tail(i) => *i >= 1 && *i <= self.tail_len(),
        }
    }

    pub fn check(&self, v: &SymVertex) -> Result<(), SymbolicError> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(SymbolicError::NotInGraph(v.to_string()))
        }
    }

    pub fn adjacent(&self, u: &SymVertex, v: &SymVertex) -> Result<bool, SymbolicError> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.adj(u, v))
    }

    /// `x ∈ N[v]`.
    pub fn in_closed(&self, v: &SymVertex, x: &SymVertex) -> Result<bool, SymbolicError> {
        self.check(v)?;
        self.check(x)?;
        Ok(self.sees(v, x))
    }

    // Unchecked forms; callers have validated membership.
    pub(crate) fn sees(&self, v: &SymVertex, x: &SymVertex) -> bool {
        v == x || self.adj(v, x)
    }

    pub(crate) fn adj(&self, u: &SymVertex, v: &SymVertex) -> bool {
        match (u, v) {
            (SymVertex::Grid(a0, b0), SymVertex::Grid(a1, b1)) => {
                if a0 == a1 && b0 == b1 {
                    return false;
                }
                (a0.is_zero() && a1.is_zero())
                    || (b0.is_zero() && b1.is_zero())
                    || (self.diagonal_edges && a0 == b0 && a1 == b1)
                    || (a0 < a1 && b0 > b1)
                    || (a0 > a1 && b0 < b1)
            }
            (SymVertex::Tail(i), SymVertex::Tail(j)) => i.abs_diff(*j) == 1,
            (SymVertex::Tail(1), g) | (g, SymVertex::Tail(1)) => g.is_origin(),
            _ => false,
        }
    }

    /// Least diagonal vertex in `N[v]`, if any.
    pub fn least_diagonal_in(&self, v: &SymVertex) -> Option<SymVertex> {
        match v {
            SymVertex::Tail(1) => Some(SymVertex::origin()),
            SymVertex::Tail(_) => None,
            SymVertex::Grid(a, b) => {
                if a.is_zero() || b.is_zero() {
                    // Both axes meet the diagonal at the origin.
                    return Some(SymVertex::origin());
                }
                if a == b {
                    return Some(if self.diagonal_edges { SymVertex::origin() } else { v.clone() });
                }
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                let d = lo.successor();
                (d < *hi).then(|| SymVertex::Grid(d.clone(), d))
            }
        }
    }

    pub fn meets_diagonal(&self, v: &SymVertex) -> bool {
        self.least_diagonal_in(v).is_some()
    }

    /// Cops in `B = {(a,a+1), (a+1,a) : a ≥ 1}`, which see no diagonal vertex.
    pub fn is_diagonal_isolated(&self, v: &SymVertex) -> bool {
        matches!(v, SymVertex::Grid(..)) && !self.meets_diagonal(v)
    }

    /// Least `ξ > above` with `(ξ, 0) ∈ N[v]`.
    pub fn x_axis_reach(&self, v: &SymVertex, above: &Ordinal) -> Option<Ordinal> {
        match v {
            SymVertex::Grid(p, q) => {
                if q.is_zero() {
                    Some(above.successor())
                } else {
                    Some(above.max(p).successor())
                }
            }
            SymVertex::Tail(_) => None,
        }
    }

    /// Least `ξ > above` with `(0, ξ) ∈ N[v]`.
    pub fn y_axis_reach(&self, v: &SymVertex, above: &Ordinal) -> Option<Ordinal> {
        self.x_axis_reach(&v.swapped(), above)
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

    #[test]
    fn adjacency_examples() {
        let g = SymbolicGraph::new(o("w^2"), 0, true).unwrap();
        assert!(g.adjacent(&v("(w,3)"), &v("(5,w*2)")).unwrap());
        assert!(!g.adjacent(&v("(1,2)"), &v("(1,3)")).unwrap());
        assert!(g.adjacent(&v("(7,7)"), &v("(w,w)")).unwrap());
        let nd = SymbolicGraph::new(o("w^2"), 0, false).unwrap();
        assert!(!nd.adjacent(&v("(7,7)"), &v("(w,w)")).unwrap());
    }

    #[test]
    fn tail_adjacency() {
        let g = SymbolicGraph::new(o("w"), 2, true).unwrap();
        assert!(g.adjacent(&v("T(1)"), &v("(0,0)")).unwrap());
        assert!(g.adjacent(&v("T(2)"), &v("T(3)")).unwrap());
        assert!(!g.adjacent(&v("T(1)"), &v("(1,0)")).unwrap());
        assert!(!g.adjacent(&v("T(1)"), &v("T(3)")).unwrap());
        assert!(matches!(g.adjacent(&v("T(4)"), &v("T(3)")), Err(SymbolicError::NotInGraph(_))));
        assert!(matches!(g.adjacent(&v("(w,0)"), &v("T(1)")), Err(SymbolicError::NotInGraph(_))));
    }

    #[test]
    fn construction_rules() {
        assert!(matches!(SymbolicGraph::new(o("w+1"), 0, true), Err(SymbolicError::NotLimit(_))));
        assert!(matches!(SymbolicGraph::new(o("0"), 0, true), Err(SymbolicError::NotLimit(_))));
        assert!(matches!(SymbolicGraph::new(o("w"), 1, false), Err(SymbolicError::VariantWithTail)));
    }

    #[test]
    fn canonical_order() {
        let mut vs = vec![v("(0,1)"), v("T(1)"), v("(0,0)"), v("T(3)"), v("(1,0)")];
        vs.sort();
        assert_eq!(vs, vec![v("T(3)"), v("T(1)"), v("(0,0)"), v("(0,1)"), v("(1,0)")]);
    }

    #[test]
    fn vertex_grammar() {
        assert_eq!(v("(w^(w+1),3)"), SymVertex::grid(o("w^(w+1)"), 3));
        assert_eq!(v(" T(2) ").to_string(), "T(2)");
        assert!("(w_invalid)".parse::<SymVertex>().is_err());
        assert!("T(0)".parse::<SymVertex>().is_err());
        assert!("(1,2,3)".parse::<SymVertex>().is_err());
    }

    #[test]
    fn diagonal_access() {
        let g = SymbolicGraph::new(o("w"), 0, true).unwrap();
        assert_eq!(g.least_diagonal_in(&v("(4,9)")), Some(v("(5,5)")));
        assert_eq!(g.least_diagonal_in(&v("(3,0)")), Some(v("(0,0)")));
        assert!(g.is_diagonal_isolated(&v("(3,4)")));
        assert!(g.is_diagonal_isolated(&v("(w+1,w)")));
        assert!(!g.is_diagonal_isolated(&v("(w,w+2)")));
        assert!(!g.is_diagonal_isolated(&v("(0,1)")));
    }
}
