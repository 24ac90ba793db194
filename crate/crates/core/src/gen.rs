//! Graph generators: finite truncations of the grid family and a small test corpus.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::finite::FiniteGraph;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenError {
    #[error("grid size must be at least 2, got {0}")]
    GridTooSmall(usize),
}

/// `{0..N-1}²` with the grid edge rule, plus an optional tail of `n + 1`
/// vertices hanging off `(0,0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncationSpec {
    pub grid_size: usize,
    pub tail_length: usize,
    pub diagonal_edges: bool,
}

impl TruncationSpec {
    pub fn new(grid_size: usize, tail_length: usize, diagonal_edges: bool) -> Self {
        TruncationSpec { grid_size, tail_length, diagonal_edges }
    }

    pub fn validate(&self) -> Result<(), GenError> {
        if self.grid_size < 2 {
            return Err(GenError::GridTooSmall(self.grid_size));
        }
        Ok(())
    }

    pub fn tail_vertices(&self) -> usize {
        if self.tail_length == 0 {
            0
        } else {
            self.tail_length + 1
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.grid_size * self.grid_size + self.tail_vertices()
    }

    /// Index of grid vertex `(a, b)`: first coordinate major.
    pub fn grid_index(&self, a: usize, b: usize) -> usize {
        a * self.grid_size + b
    }

    /// Index of the tail vertex `(-i, 0)`, `1 ≤ i ≤ n + 1`.
    pub fn tail_index(&self, i: usize) -> usize {
        debug_assert!(i >= 1 && i <= self.tail_vertices());
        self.grid_size * self.grid_size + i - 1
    }
}

/// The five-clause grid edge rule on distinct points.
pub fn grid_adjacent(a0: usize, b0: usize, a1: usize, b1: usize, diagonal_edges: bool) -> bool {
    if (a0, b0) == (a1, b1) {
        return false;
    }
    (a0 == 0 && a1 == 0)
        || (b0 == 0 && b1 == 0)
        || (diagonal_edges && a0 == b0 && a1 == b1)
        || (a0 < a1 && b0 > b1)
        || (a0 > a1 && b0 < b1)
}

pub fn truncation(spec: &TruncationSpec) -> Result<FiniteGraph, GenError> {
    spec.validate()?;
    let n = spec.grid_size;
    let mut labels = Vec::with_capacity(spec.vertex_count());
    for a in 0..n {
        for b in 0..n {
            labels.push(format!("({a},{b})"));
        }
    }
    for i in 1..=spec.tail_vertices() {
        labels.push(format!("(-{i},0)"));
    }
    let mut g = FiniteGraph::with_labels(labels);
    for a0 in 0..n {
        for b0 in 0..n {
            for a1 in 0..n {
                for b1 in 0..n {
                    let (u, v) = (spec.grid_index(a0, b0), spec.grid_index(a1, b1));
                    if u < v && grid_adjacent(a0, b0, a1, b1, spec.diagonal_edges) {
                        g.add_edge(u, v).expect("distinct grid vertices");
                    }
                }
            }
        }
    }
    for i in 1..=spec.tail_vertices() {
        let prev = if i == 1 { spec.grid_index(0, 0) } else { spec.tail_index(i - 1) };
        g.add_edge(spec.tail_index(i), prev).expect("tail edge");
    }
    Ok(g)
}

pub fn path(k: usize) -> FiniteGraph {
    let mut g = FiniteGraph::empty(k);
    for i in 1..k {
        g.add_edge(i - 1, i).expect("path edge");
    }
    g
}

/// `C_k`; for `k < 3` this degenerates to the path.
pub fn cycle(k: usize) -> FiniteGraph {
    let mut g = path(k);
    if k >= 3 {
        g.add_edge(k - 1, 0).expect("cycle edge");
    }
    g
}

pub fn complete(k: usize) -> FiniteGraph {
    let mut g = FiniteGraph::empty(k);
    for u in 0..k {
        for v in u + 1..k {
            g.add_edge(u, v).expect("complete edge");
        }
    }
    g
}

/// Erdős–Rényi `G(k, p)`, deterministic in `seed`.
pub fn random(k: usize, edge_prob: f64, seed: u64) -> FiniteGraph {
    let p = edge_prob.clamp(0.0, 1.0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = FiniteGraph::empty(k);
    for u in 0..k {
        for v in u + 1..k {
            if rng.gen_bool(p) {
                g.add_edge(u, v).expect("random edge");
            }
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(spec: &TruncationSpec, a: usize, b: usize) -> usize {
        spec.grid_index(a, b)
    }

    #[test]
    fn small_truncation_edges() {
        let spec = TruncationSpec::new(2, 0, true);
        let g = truncation(&spec).unwrap();
        assert!(g.adjacent(idx(&spec, 0, 1), idx(&spec, 1, 0)));
        assert!(g.adjacent(idx(&spec, 0, 0), idx(&spec, 1, 1)));
        assert!(!g.adjacent(idx(&spec, 0, 1), idx(&spec, 1, 1)));
        let nodiag = truncation(&TruncationSpec::new(2, 0, false)).unwrap();
        assert!(!nodiag.adjacent(idx(&spec, 0, 0), idx(&spec, 1, 1)));
    }

    #[test]
    fn origin_sees_its_three_cliques_in_t3() {
        // The axes and the diagonal through (0,0) cover six of the other
        // eight points; (1,2) and (2,1) sit on none of them and no
        // anti-monotone pair involves the origin.
        let spec = TruncationSpec::new(3, 0, true);
        let g = truncation(&spec).unwrap();
        assert_eq!(g.neighbors(0).count(), 6);
        assert!(!g.adjacent(0, idx(&spec, 1, 2)));
        assert!(!g.adjacent(0, idx(&spec, 2, 1)));
    }

    #[test]
    fn tail_shape() {
        let spec = TruncationSpec::new(4, 2, true);
        let g = truncation(&spec).unwrap();
        assert_eq!(g.vertex_count(), 19);
        let t2 = spec.tail_index(2);
        let nbrs: Vec<usize> = g.neighbors(t2).iter().collect();
        assert_eq!(nbrs, vec![spec.tail_index(1), spec.tail_index(3)]);
        assert_eq!(g.label(t2), "(-2,0)");
        // (-1,0) touches the origin only, not the rest of the x-axis.
        let t1: Vec<usize> = g.neighbors(spec.tail_index(1)).iter().collect();
        assert_eq!(t1, vec![0, spec.tail_index(2)]);
    }

    #[test]
    fn no_tail_when_zero() {
        let spec = TruncationSpec::new(3, 0, true);
        assert_eq!(truncation(&spec).unwrap().vertex_count(), 9);
        assert_eq!(truncation(&TruncationSpec::new(1, 0, true)), Err(GenError::GridTooSmall(1)));
    }

    #[test]
    fn random_is_deterministic() {
        assert_eq!(random(8, 0.5, 0), random(8, 0.5, 0));
        assert_ne!(random(8, 0.5, 0), random(8, 0.5, 1));
        assert!(random(8, 0.5, 0).is_symmetric());
    }
}
