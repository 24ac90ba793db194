//! Independent game-value oracle for small graphs.
//!
//! Plays the alternating game on explicit `(robber, cop, turn)` states and
//! solves it by retrograde analysis, with no use of the relation sweeps in
//! [`super::solve`].

use std::collections::VecDeque;

use super::graph::FiniteGraph;
use super::solve::EtaValue;
use super::GameError;

pub const DEFAULT_MAX_VERTICES: usize = 12;

/// Game values with the robber to move, indexed `[robber][cop]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameValues {
    values: Vec<Vec<EtaValue>>,
}

impl GameValues {
    pub fn get(&self, robber: usize, cop: usize) -> EtaValue {
        self.values[robber][cop]
    }
}

/// Value of the game with the robber at `u` moving first and the cop at `v`.
pub fn naive_game_value(
    g: &FiniteGraph,
    u: usize,
    v: usize,
    max_vertices: usize,
) -> Result<EtaValue, GameError> {
    g.check(u)?;
    g.check(v)?;
    Ok(naive_game_values(g, max_vertices)?.get(u, v))
}

pub fn naive_game_values(g: &FiniteGraph, max_vertices: usize) -> Result<GameValues, GameError> {
    let n = g.vertex_count();
    if n > max_vertices {
        return Err(GameError::TooLarge { vertices: n, limit: max_vertices });
    }
    let nbrs: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            let mut out: Vec<usize> = g.neighbors(v).iter().collect();
            out.push(v);
            out
        })
        .collect();

    // State (r, c, robber_to_move) has index 2*(r*n + c) + (robber_to_move as usize).
    let idx = |r: usize, c: usize, robber: bool| 2 * (r * n + c) + robber as usize;
    let mut value: Vec<Option<u32>> = vec![None; 2 * n * n];
    // Robber states resolve once every successor is resolved.
    let mut pending: Vec<usize> = vec![0; 2 * n * n];
    let mut queue = VecDeque::new();

    for r in 0..n {
        for c in 0..n {
            if r == c {
                value[idx(r, c, true)] = Some(0);
                queue.push_back((r, c, true));
            } else {
                pending[idx(r, c, true)] = nbrs[r].len();
            }
        }
    }

    // Values leave the queue in nondecreasing order, so the first resolution
    // of a cop state is its minimum and the last successor of a robber state
    // is its maximum.
    while let Some((r, c, robber_to_move)) = queue.pop_front() {
        let val = value[idx(r, c, robber_to_move)].expect("queued states are resolved");
        if robber_to_move {
            // Predecessors: cop states (r, c') where the cop moved c' -> c.
            for &prev_cop in &nbrs[c] {
                let s = idx(r, prev_cop, false);
                if value[s].is_none() {
                    value[s] = Some(val + 1);
                    queue.push_back((r, prev_cop, false));
                }
            }
        } else {
            // Predecessors: robber states (r', c) where the robber moved r' -> r.
            for &prev_robber in &nbrs[r] {
                let s = idx(prev_robber, c, true);
                if value[s].is_some() {
                    continue;
                }
                pending[s] -= 1;
                if pending[s] == 0 {
                    value[s] = Some(val);
                    queue.push_back((prev_robber, c, true));
                }
            }
        }
    }

    let values = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| match value[idx(r, c, true)] {
                    Some(k) => EtaValue::Steps(k),
                    None => EtaValue::RobberWins,
                })
                .collect()
        })
        .collect();
    Ok(GameValues { values })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;

    #[test]
    fn same_vertex_is_zero() {
        let g = gen::random(7, 0.4, 3);
        for u in 0..7 {
            assert_eq!(naive_game_value(&g, u, u, 12).unwrap(), EtaValue::Steps(0));
        }
    }

    #[test]
    fn k2_is_one() {
        assert_eq!(naive_game_value(&gen::complete(2), 0, 1, 12).unwrap(), EtaValue::Steps(1));
    }

    #[test]
    fn size_guard() {
        let g = gen::path(13);
        assert!(matches!(
            naive_game_value(&g, 0, 1, DEFAULT_MAX_VERTICES),
            Err(GameError::TooLarge { vertices: 13, limit: 12 })
        ));
        assert!(naive_game_value(&g, 0, 1, 13).is_ok());
    }

    #[test]
    fn path_values_by_hand() {
        // P_3, cop in the middle catches anyone in one move.
        let v = naive_game_values(&gen::path(3), 12).unwrap();
        assert_eq!(v.get(0, 1), EtaValue::Steps(1));
        assert_eq!(v.get(2, 1), EtaValue::Steps(1));
        // Cop at an end: robber at the far end is caught after two cop moves.
        assert_eq!(v.get(2, 0), EtaValue::Steps(2));
        let c4 = naive_game_values(&gen::cycle(4), 12).unwrap();
        assert_eq!(c4.get(0, 2), EtaValue::RobberWins);
    }
}
