use std::collections::HashMap;

use super::bitset::BitRow;
use super::GameError;

/// Undirected simple graph with dense bit-row adjacency.
///
/// Rows hold open neighborhoods; closed neighborhoods are built on demand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGraph {
    labels: Vec<String>,
    rows: Vec<BitRow>,
}

impl FiniteGraph {
    /// `n` vertices labelled `0..n`, no edges.
    pub fn empty(n: usize) -> Self {
        FiniteGraph::with_labels((0..n).map(|i| i.to_string()).collect())
    }

    pub fn with_labels(labels: Vec<String>) -> Self {
        let n = labels.len();
        FiniteGraph { labels, rows: vec![BitRow::new(n); n] }
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn label_index(&self) -> HashMap<&str, usize> {
        self.labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect()
    }

    /// Adds the edge `{u, v}`. Self-loops are rejected.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GameError> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Err(GameError::SelfLoop(self.labels[u].clone()));
        }
        self.rows[u].insert(v);
        self.rows[v].insert(u);
        Ok(())
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> &BitRow {
        &self.rows[v]
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn edge_count(&self) -> usize {
        self.edges().count()
    }

    /// `N[v]`: `v` together with its neighbors.
    pub fn closed_neighborhood(&self, v: usize) -> Result<BitRow, GameError> {
        self.check(v)?;
        let mut row = self.rows[v].clone();
        row.insert(v);
        Ok(row)
    }

    /// All closed neighborhoods, indexed by vertex.
    pub fn closed_rows(&self) -> Vec<BitRow> {
        (0..self.vertex_count())
            .map(|v| {
                let mut row = self.rows[v].clone();
                row.insert(v);
                row
            })
            .collect()
    }

    /// True iff `N[x] ⊆ N[y]`.
    pub fn dominates(&self, y: usize, x: usize) -> Result<bool, GameError> {
        Ok(self.closed_neighborhood(x)?.is_subset(&self.closed_neighborhood(y)?))
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.vertex_count()).all(|u| {
            !self.rows[u].contains(u) && self.rows[u].iter().all(|v| self.rows[v].contains(u))
        })
    }

    pub(crate) fn check(&self, v: usize) -> Result<(), GameError> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(GameError::VertexOutOfRange { index: v, count: self.vertex_count() })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;

    #[test]
    fn closed_neighborhoods() {
        let p3 = gen::path(3);
        assert_eq!(p3.closed_neighborhood(1).unwrap().iter().collect::<Vec<_>>(), vec![0, 1, 2]);
        let lonely = FiniteGraph::empty(1);
        assert_eq!(lonely.closed_neighborhood(0).unwrap().iter().collect::<Vec<_>>(), vec![0]);
        let k4 = gen::complete(4);
        for v in 0..4 {
            assert_eq!(k4.closed_neighborhood(v).unwrap().count(), 4);
        }
        assert!(matches!(
            p3.closed_neighborhood(3),
            Err(GameError::VertexOutOfRange { index: 3, count: 3 })
        ));
    }

    #[test]
    fn domination() {
        let p3 = gen::path(3);
        assert!(p3.dominates(1, 0).unwrap());
        assert!(!p3.dominates(0, 1).unwrap());
        let c4 = gen::cycle(4);
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(c4.dominates(y, x).unwrap(), x == y);
            }
        }
    }

    #[test]
    fn self_loops_rejected() {
        let mut g = FiniteGraph::empty(2);
        assert!(matches!(g.add_edge(1, 1), Err(GameError::SelfLoop(_))));
    }
}
