use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::bitset::BitRow;
use super::graph::FiniteGraph;
use super::GameError;

/// A capture time on a finite graph: a number of cop moves, or a robber win.
///
/// `RobberWins` orders above every finite value, so maxima absorb it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EtaValue {
    Steps(u32),
    RobberWins,
}

impl EtaValue {
    pub fn steps(self) -> Option<u32> {
        match self {
            EtaValue::Steps(k) => Some(k),
            EtaValue::RobberWins => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, EtaValue::Steps(_))
    }
}

impl fmt::Display for EtaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EtaValue::Steps(k) => write!(f, "{k}"),
            EtaValue::RobberWins => f.write_str("ROBBER_WINS"),
        }
    }
}

const ROBBER_WINS: &str = "robber-wins";

impl Serialize for EtaValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            EtaValue::Steps(k) => s.serialize_u32(*k),
            EtaValue::RobberWins => s.serialize_str(ROBBER_WINS),
        }
    }
}

impl<'de> Deserialize<'de> for EtaValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Steps(u32),
            Tag(String),
        }
        match Raw::deserialize(d)? {
            Raw::Steps(k) => Ok(EtaValue::Steps(k)),
            Raw::Tag(t) if t == ROBBER_WINS => Ok(EtaValue::RobberWins),
            Raw::Tag(t) => Err(serde::de::Error::custom(format!("unknown capture value {t:?}"))),
        }
    }
}

/// The full η table of a finite graph, indexed `values[robber][cop]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EtaTable {
    pub labels: Vec<String>,
    pub values: Vec<Vec<EtaValue>>,
    /// η(v): worst case over robber starts for each cop start.
    pub eta_per_cop_start: Vec<EtaValue>,
    /// η(G) = min over cop starts.
    pub capture_time: EtaValue,
    /// ρ(G) = max over cop starts.
    pub max_capture_time: EtaValue,
    /// Number of relation sweeps until the fixpoint.
    pub sweeps: usize,
}

impl EtaTable {
    pub fn get(&self, robber: usize, cop: usize) -> EtaValue {
        self.values[robber][cop]
    }

    pub fn vertex_count(&self) -> usize {
        self.values.len()
    }

    /// Some cop start catches every robber.
    pub fn is_cop_win(&self) -> bool {
        self.capture_time.is_finite()
    }

    fn from_values(labels: Vec<String>, values: Vec<Vec<EtaValue>>, sweeps: usize) -> Self {
        let n = values.len();
        let eta_per_cop_start: Vec<EtaValue> = (0..n)
            .map(|v| (0..n).map(|u| values[u][v]).max().unwrap_or(EtaValue::Steps(0)))
            .collect();
        let capture_time = eta_per_cop_start.iter().copied().min().unwrap_or(EtaValue::Steps(0));
        let max_capture_time =
            eta_per_cop_start.iter().copied().max().unwrap_or(EtaValue::Steps(0));
        EtaTable { labels, values, eta_per_cop_start, capture_time, max_capture_time, sweeps }
    }
}

const PARALLEL_ROWS: usize = 256;

/// Computes η(u, v) for every pair by iterating the relations `R_k`.
///
/// `R_0` is equality and `R_{k+1}(u, v)` holds iff every `x ∈ N[u]` has some
/// `y ∈ N[v]` with `R_k(x, y)`. Each sweep expands row `R_k[x]` to
/// `S_x = ⋃_{y ∈ R_k[x]} N[y]` (the cop starts that can answer `x`), then
/// intersects `S_x` over `x ∈ N[u]`.
pub fn eta_all(g: &FiniteGraph) -> Result<EtaTable, GameError> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(GameError::EmptyGraph);
    }
    let closed = g.closed_rows();
    let mut rel: Vec<BitRow> = (0..n)
        .map(|u| {
            let mut r = BitRow::new(n);
            r.insert(u);
            r
        })
        .collect();
    let mut values = vec![vec![EtaValue::RobberWins; n]; n];
    for (u, row) in values.iter_mut().enumerate() {
        row[u] = EtaValue::Steps(0);
    }

    let mut k: u32 = 0;
    loop {
        k += 1;
        let answer = |x: usize| {
            let mut s = BitRow::new(n);
            for y in rel[x].iter() {
                s.union_with(&closed[y]);
            }
            s
        };
        let reach: Vec<BitRow> = if n >= PARALLEL_ROWS {
            (0..n).into_par_iter().map(answer).collect()
        } else {
            (0..n).map(answer).collect()
        };
        let sweep = |u: usize| {
            let mut r = BitRow::new(n);
            r.fill();
            for x in closed[u].iter() {
                r.intersect_with(&reach[x]);
            }
            r
        };
        let next: Vec<BitRow> = if n >= PARALLEL_ROWS {
            (0..n).into_par_iter().map(sweep).collect()
        } else {
            (0..n).map(sweep).collect()
        };

        let mut changed = false;
        for u in 0..n {
            assert!(rel[u].is_subset(&next[u]), "relation sweep is not monotone at row {u}");
            if next[u] != rel[u] {
                changed = true;
                for v in next[u].iter() {
                    if !rel[u].contains(v) {
                        values[u][v] = EtaValue::Steps(k);
                    }
                }
            }
        }
        rel = next;
        if !changed {
            break;
        }
        assert!((k as usize) <= n * n, "relation iteration exceeded n² sweeps");
    }
    Ok(EtaTable::from_values(g.labels().to_vec(), values, k as usize))
}

/// One elimination: `vertex` was dominated by `dominator` among the survivors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Elimination {
    pub vertex: usize,
    pub dominator: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "outcome")]
pub enum Dismantling {
    /// Removal order; `last` is the single surviving vertex.
    Order { eliminations: Vec<Elimination>, last: usize },
    NotDismantlable { remaining: Vec<usize> },
}

impl Dismantling {
    pub fn is_dismantlable(&self) -> bool {
        matches!(self, Dismantling::Order { .. })
    }
}

/// Greedy elimination of dominated vertices.
///
/// Removing any dominated vertex preserves dismantlability, so the greedy
/// order succeeds whenever some order does.
pub fn dismantle(g: &FiniteGraph) -> Result<Dismantling, GameError> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(GameError::EmptyGraph);
    }
    let closed = g.closed_rows();
    let mut alive = BitRow::new(n);
    alive.fill();
    let mut eliminations = Vec::with_capacity(n - 1);
    while alive.count() > 1 {
        let found = alive.iter().find_map(|x| {
            alive
                .iter()
                .find(|&y| y != x && closed[x].is_subset_within(&alive, &closed[y]))
                .map(|y| (x, y))
        });
        match found {
            Some((vertex, dominator)) => {
                alive.remove(vertex);
                eliminations.push(Elimination { vertex, dominator });
            }
            None => return Ok(Dismantling::NotDismantlable { remaining: alive.iter().collect() }),
        }
    }
    let last = alive.iter().next().expect("one vertex survives");
    Ok(Dismantling::Order { eliminations, last })
}

/// Cop replies `move_for(x, v)`: after the robber moved to `x`, a cop at `v`
/// steps to the vertex of `N[v]` with the smallest η(x, ·), ties to the
/// smallest index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CopPolicy {
    moves: Vec<Vec<usize>>,
}

impl CopPolicy {
    pub fn move_for(&self, robber: usize, cop: usize) -> usize {
        self.moves[robber][cop]
    }
}

pub fn optimal_cop_policy(g: &FiniteGraph, table: &EtaTable) -> Result<CopPolicy, GameError> {
    let n = g.vertex_count();
    if table.vertex_count() != n {
        return Err(GameError::TableMismatch { graph: n, table: table.vertex_count() });
    }
    let closed = g.closed_rows();
    let moves = (0..n)
        .map(|x| {
            (0..n)
                .map(|v| {
                    closed[v]
                        .iter()
                        .min_by_key(|&y| (table.get(x, y), y))
                        .expect("closed neighborhood contains v")
                })
                .collect()
        })
        .collect();
    Ok(CopPolicy { moves })
}

/// Checks the policy's defining property: for every cop-win pair `u ≠ v` and
/// every robber move `x ∈ N[u]`, η(x, move(x, v)) < η(u, v).
pub fn policy_violations(
    g: &FiniteGraph,
    table: &EtaTable,
    policy: &CopPolicy,
) -> Vec<(usize, usize, usize)> {
    let n = g.vertex_count();
    let closed = g.closed_rows();
    let mut bad = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u == v || !table.get(u, v).is_finite() {
                continue;
            }
            for x in closed[u].iter() {
                let y = policy.move_for(x, v);
                if !closed[v].contains(y) || table.get(x, y) >= table.get(u, v) {
                    bad.push((u, v, x));
                }
            }
        }
    }
    bad
}

/// Pairs `u ≠ v` with finite η that break
/// `η(u, v) = 1 + max_{x ∈ N[u]} min_{y ∈ N[v]} η(x, y)`.
pub fn recursion_violations(g: &FiniteGraph, table: &EtaTable) -> Vec<(usize, usize)> {
    let n = g.vertex_count();
    let closed = g.closed_rows();
    let mut bad = Vec::new();
    for u in 0..n {
        for v in 0..n {
            let EtaValue::Steps(k) = table.get(u, v) else { continue };
            if u == v {
                if k != 0 {
                    bad.push((u, v));
                }
                continue;
            }
            let worst = closed[u]
                .iter()
                .map(|x| closed[v].iter().map(|y| table.get(x, y)).min().expect("nonempty"))
                .max()
                .expect("nonempty");
            if worst != EtaValue::Steps(k - 1) {
                bad.push((u, v));
            }
        }
    }
    bad
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;

    #[test]
    fn k2_is_one() {
        let t = eta_all(&gen::complete(2)).unwrap();
        assert_eq!(t.get(0, 1), EtaValue::Steps(1));
        assert_eq!(t.get(1, 0), EtaValue::Steps(1));
        assert_eq!(t.get(0, 0), EtaValue::Steps(0));
        assert_eq!(t.capture_time, EtaValue::Steps(1));
    }

    #[test]
    fn p5_capture_time_is_two() {
        let t = eta_all(&gen::path(5)).unwrap();
        assert_eq!(t.capture_time, EtaValue::Steps(2));
        assert_eq!(t.eta_per_cop_start[2], EtaValue::Steps(2));
        // Cop at one end, robber at the other end stays put: 4 moves.
        assert_eq!(t.max_capture_time, EtaValue::Steps(4));
    }

    #[test]
    fn c4_is_robber_win() {
        let t = eta_all(&gen::cycle(4)).unwrap();
        assert_eq!(t.capture_time, EtaValue::RobberWins);
        assert!(t.eta_per_cop_start.iter().all(|&e| e == EtaValue::RobberWins));
        assert!(recursion_violations(&gen::cycle(4), &t).is_empty());
    }

    #[test]
    fn empty_graph_rejected() {
        assert!(matches!(eta_all(&FiniteGraph::empty(0)), Err(GameError::EmptyGraph)));
        assert!(matches!(dismantle(&FiniteGraph::empty(0)), Err(GameError::EmptyGraph)));
    }

    #[test]
    fn dismantle_examples() {
        for k in 1..=6 {
            assert!(dismantle(&gen::complete(k)).unwrap().is_dismantlable());
        }
        assert!(!dismantle(&gen::cycle(4)).unwrap().is_dismantlable());
        match dismantle(&gen::path(5)).unwrap() {
            Dismantling::Order { eliminations, .. } => {
                // Greedy removes the lowest dominated vertex: the left endpoint, inward.
                let order: Vec<usize> = eliminations.iter().map(|e| e.vertex).collect();
                assert_eq!(order, vec![0, 1, 2, 3]);
                for e in &eliminations {
                    assert_eq!(e.dominator, e.vertex + 1);
                }
            }
            other => panic!("P5 should dismantle, got {other:?}"),
        }
    }

    #[test]
    fn policy_examples() {
        let k2 = gen::complete(2);
        let t = eta_all(&k2).unwrap();
        let p = optimal_cop_policy(&k2, &t).unwrap();
        assert_eq!(p.move_for(0, 1), 0);

        let p5 = gen::path(5);
        let t = eta_all(&p5).unwrap();
        let p = optimal_cop_policy(&p5, &t).unwrap();
        // Robber at 4 stays, cop at 0 advances.
        assert_eq!(p.move_for(4, 0), 1);
        assert!(policy_violations(&p5, &t, &p).is_empty());

        let c4 = gen::cycle(4);
        let t = eta_all(&c4).unwrap();
        let p = optimal_cop_policy(&c4, &t).unwrap();
        for x in 0..4 {
            for v in 0..4 {
                assert!(c4.closed_neighborhood(v).unwrap().contains(p.move_for(x, v)));
            }
        }
    }

    #[test]
    fn eta_value_serde() {
        let v = vec![EtaValue::Steps(3), EtaValue::RobberWins];
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"[3,"robber-wins"]"#);
        assert_eq!(serde_json::from_str::<Vec<EtaValue>>(&s).unwrap(), v);
        assert!(serde_json::from_str::<EtaValue>(r#""nope""#).is_err());
    }
}
