//! Witness-descent certificates for sampled instances of `u ≤_α v`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::families::{Family, Witness};
use super::graph::{SymVertex, SymbolicGraph};
use super::SymbolicError;
use crate::ordinal::Ordinal;

/// `u ≤_rank v`, proven by `family` (no family for `u = v`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub u: SymVertex,
    pub v: SymVertex,
    pub rank: Ordinal,
    pub family: Option<Family>,
}

impl Claim {
    /// The family's own statement for `(u, v)`.
    pub fn of_family(g: &SymbolicGraph, family: Family, u: SymVertex, v: SymVertex) -> Result<Claim, SymbolicError> {
        let rank = family.rank(g, &u, &v)?;
        Ok(Claim { u, v, rank, family: Some(family) })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NodeKind {
    Equality,
    Domination,
    Descent,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub claim: Claim,
    pub kind: NodeKind,
    pub steps: Vec<Step>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub challenge: SymVertex,
    pub witness: SymVertex,
    pub rank: Ordinal,
    pub child: Certificate,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescentStats {
    pub nodes: usize,
    pub steps: usize,
    pub max_depth: usize,
}

impl Certificate {
    pub fn stats(&self) -> DescentStats {
        let mut s = DescentStats::default();
        let mut stack = vec![(self, 0usize)];
        while let Some((c, d)) = stack.pop() {
            s.nodes += 1;
            s.max_depth = s.max_depth.max(d);
            for step in &c.steps {
                s.steps += 1;
                stack.push((&step.child, d + 1));
            }
        }
        s
    }

    /// Re-checks the structural invariants of an accepted tree.
    pub fn is_sound(&self, g: &SymbolicGraph) -> bool {
        let mut stack = vec![self];
        while let Some(c) = stack.pop() {
            let Claim { u, v, rank, .. } = &c.claim;
            if u == v {
                if !c.steps.is_empty() {
                    return false;
                }
                continue;
            }
            if rank.is_zero() || c.steps.is_empty() {
                return false;
            }
            for s in &c.steps {
                let ok = g.sees(u, &s.challenge)
                    && g.sees(v, &s.witness)
                    && s.rank < *rank
                    && s.child.claim.u == s.challenge
                    && s.child.claim.v == s.witness
                    && s.child.claim.rank == s.rank;
                if !ok {
                    return false;
                }
                stack.push(&s.child);
            }
        }
        true
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    /// 0 for the root claim itself, `d` for a step taken at depth `d`.
    pub depth: usize,
    pub claim: Claim,
    pub challenge: Option<SymVertex>,
    pub message: String,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertifyError {
    #[error("violation at depth {}: {} (claim {} <= {} at rank {})", .0.depth, .0.message, .0.claim.u, .0.claim.v, .0.claim.rank)]
    Violation(Box<Violation>),
    #[error("step budget of {budget} exceeded")]
    BudgetExceeded { budget: usize },
    #[error("sampler produced no challenge for {u} <= {v}")]
    SamplerExhausted { u: String, v: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertifyConfig {
    /// Challenges drawn at the root.
    pub root_samples: usize,
    /// Challenges drawn at every inner node.
    pub inner_samples: usize,
    pub step_budget: usize,
}

impl Default for CertifyConfig {
    fn default() -> Self {
        CertifyConfig { root_samples: 16, inner_samples: 1, step_budget: 1_000_000 }
    }
}

/// Supplies robber moves `x ∈ N[u]` to challenge a claim with.
pub trait ChallengeSampler {
    fn challenges(&mut self, g: &SymbolicGraph, claim: &Claim, count: usize) -> Vec<SymVertex>;
}

/// Supplies the cop's answers; [`ProofWitnesses`] uses the families.
pub trait WitnessSource {
    fn witness(
        &self,
        g: &SymbolicGraph,
        family: Family,
        u: &SymVertex,
        v: &SymVertex,
        x: &SymVertex,
    ) -> Result<Witness, SymbolicError>;
}

pub struct ProofWitnesses;

impl WitnessSource for ProofWitnesses {
    fn witness(
        &self,
        g: &SymbolicGraph,
        family: Family,
        u: &SymVertex,
        v: &SymVertex,
        x: &SymVertex,
    ) -> Result<Witness, SymbolicError> {
        family.witness(g, u, v, x)
    }
}

/// Audits `claim` by full recursive descent: every sampled challenge is
/// answered and the resulting claim is audited in turn, down to equality.
pub fn certify(
    g: &SymbolicGraph,
    claim: Claim,
    sampler: &mut dyn ChallengeSampler,
    config: &CertifyConfig,
    source: &dyn WitnessSource,
) -> Result<Certificate, CertifyError> {
    let mut steps = 0usize;
    let mut audit = Audit { g, sampler, config, source, steps: &mut steps };
    audit.node(claim, 0)
}

struct Audit<'a> {
    g: &'a SymbolicGraph,
    sampler: &'a mut dyn ChallengeSampler,
    config: &'a CertifyConfig,
    source: &'a dyn WitnessSource,
    steps: &'a mut usize,
}

impl Audit<'_> {
    fn node(&mut self, claim: Claim, depth: usize) -> Result<Certificate, CertifyError> {
        let violation = |claim: &Claim, depth: usize, challenge: Option<&SymVertex>, message: String| {
            CertifyError::Violation(Box::new(Violation {
                depth,
                claim: claim.clone(),
                challenge: challenge.cloned(),
                message,
            }))
        };
        if let Err(e) = self.g.check(&claim.u).and_then(|_| self.g.check(&claim.v)) {
            return Err(violation(&claim, depth, None, e.to_string()));
        }
        if claim.u == claim.v {
            return Ok(Certificate { claim, kind: NodeKind::Equality, steps: Vec::new() });
        }
        if claim.rank.is_zero() {
            return Err(violation(&claim, depth, None, "rank 0 requires u = v".into()));
        }
        let Some(family) = claim.family else {
            return Err(violation(&claim, depth, None, "distinct vertices need a proving family".into()));
        };
        match family.rank(self.g, &claim.u, &claim.v) {
            Err(e) => return Err(violation(&claim, depth, None, e.to_string())),
            Ok(r) if r > claim.rank => {
                return Err(violation(
                    &claim,
                    depth,
                    None,
                    format!("{family} proves rank {r}, above the claimed {}", claim.rank),
                ))
            }
            Ok(_) => {}
        }

        let count = if depth == 0 { self.config.root_samples } else { self.config.inner_samples };
        let challenges = self.sampler.challenges(self.g, &claim, count.max(1));
        if challenges.is_empty() {
            return Err(CertifyError::SamplerExhausted { u: claim.u.to_string(), v: claim.v.to_string() });
        }
        let step_depth = depth + 1;
        let mut out = Vec::with_capacity(challenges.len());
        for x in challenges {
            *self.steps += 1;
            if *self.steps > self.config.step_budget {
                return Err(CertifyError::BudgetExceeded { budget: self.config.step_budget });
            }
            let fail = |msg: String| violation(&claim, step_depth, Some(&x), msg);
            if !self.g.contains(&x) || !self.g.sees(&claim.u, &x) {
                return Err(fail(format!("challenge {x} is not in N[{}]", claim.u)));
            }
            let w = self.source.witness(self.g, family, &claim.u, &claim.v, &x).map_err(|e| fail(e.to_string()))?;
            if !self.g.contains(&w.y) || !self.g.sees(&claim.v, &w.y) {
                return Err(fail(format!("witness {} is not in N[{}]", w.y, claim.v)));
            }
            if w.rank >= claim.rank {
                return Err(fail(format!("rank {} does not decrease below {}", w.rank, claim.rank)));
            }
            if w.rank.is_zero() && w.y != x {
                return Err(fail(format!("rank 0 but witness {} differs from challenge", w.y)));
            }
            let child = Claim { u: x.clone(), v: w.y.clone(), rank: w.rank.clone(), family: w.family };
            let sub = self.node(child, step_depth)?;
            out.push(Step { challenge: x, witness: w.y, rank: w.rank, child: sub });
        }
        let kind = if claim.rank == Ordinal::one() { NodeKind::Domination } else { NodeKind::Descent };
        Ok(Certificate { claim, kind, steps: out })
    }
}
