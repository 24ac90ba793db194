use serde::{Deserialize, Serialize};

use super::HarnessError;
use crate::ordinal::Ordinal;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub seed: u64,
    pub gammas: Vec<Ordinal>,
    pub tail_lengths: Vec<u64>,
    pub truncation_sizes: Vec<usize>,
    pub samples_per_claim: usize,
    pub survival_budget_max: u64,
    pub corpus_size: usize,
    /// Largest random corpus graph.
    pub corpus_max_vertices: usize,
    pub simulation_robbers: usize,
    pub simulation_round_cap: usize,
    pub survival_pairs: usize,
    /// Challenges drawn at the root of each certificate.
    pub root_challenges: usize,
    pub step_budget: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        let w = Ordinal::omega();
        SuiteConfig {
            seed: 0,
            gammas: vec![
                w.clone(),
                Ordinal::monomial(Ordinal::one(), 2),
                Ordinal::omega_pow(Ordinal::finite(2)),
                Ordinal::omega_pow(w),
            ],
            tail_lengths: vec![1, 2, 3],
            truncation_sizes: vec![4, 6, 8],
            samples_per_claim: 1000,
            survival_budget_max: 20,
            corpus_size: 200,
            corpus_max_vertices: 8,
            simulation_robbers: 500,
            simulation_round_cap: 10_000,
            survival_pairs: 100,
            root_challenges: 8,
            step_budget: 1_000_000,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<(), HarnessError> {
        for g in &self.gammas {
            if !g.is_limit() {
                return Err(HarnessError::Config(format!("gamma {g} is not an infinite limit ordinal")));
            }
        }
        if self.gammas.is_empty() {
            return Err(HarnessError::Config("at least one gamma is required".into()));
        }
        if self.tail_lengths.iter().any(|&n| n == 0) {
            return Err(HarnessError::Config("tail lengths must be positive".into()));
        }
        if self.truncation_sizes.iter().any(|&n| n < 2) {
            return Err(HarnessError::Config("truncation sizes must be at least 2".into()));
        }
        if self.corpus_max_vertices == 0 || self.root_challenges == 0 {
            return Err(HarnessError::Config("corpus_max_vertices and root_challenges must be positive".into()));
        }
        Ok(())
    }

    /// Reads `key = value` lines over the defaults; `#` starts a comment and
    /// lists are comma separated.
    pub fn parse(text: &str) -> Result<SuiteConfig, HarnessError> {
        let mut c = SuiteConfig::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |msg: String| HarnessError::Config(format!("line {}: {msg}", i + 1));
            let (key, value) = line.split_once('=').ok_or_else(|| bad("expected key = value".into()))?;
            let (key, value) = (key.trim(), value.trim());
            let num = |v: &str| v.parse::<u64>().map_err(|e| bad(format!("{key}: {e}")));
            let list = |v: &str| -> Result<Vec<u64>, HarnessError> {
                v.split(',').filter(|s| !s.trim().is_empty()).map(|s| num(s.trim())).collect()
            };
            match key {
                "seed" => c.seed = num(value)?,
                "gammas" => {
                    c.gammas = value
                        .split(',')
                        .filter(|s| !s.trim().is_empty())
                        .map(|s| s.trim().parse::<Ordinal>().map_err(|e| bad(format!("gammas: {e}"))))
                        .collect::<Result<_, _>>()?
                }
                "tail_lengths" => c.tail_lengths = list(value)?,
                "truncation_sizes" => c.truncation_sizes = list(value)?.into_iter().map(|n| n as usize).collect(),
                "samples_per_claim" => c.samples_per_claim = num(value)? as usize,
                "survival_budget_max" => c.survival_budget_max = num(value)?,
                "corpus_size" => c.corpus_size = num(value)? as usize,
                "corpus_max_vertices" => c.corpus_max_vertices = num(value)? as usize,
                "simulation_robbers" => c.simulation_robbers = num(value)? as usize,
                "simulation_round_cap" => c.simulation_round_cap = num(value)? as usize,
                "survival_pairs" => c.survival_pairs = num(value)? as usize,
                "root_challenges" => c.root_challenges = num(value)? as usize,
                "step_budget" => c.step_budget = num(value)? as usize,
                other => return Err(bad(format!("unknown key {other:?}"))),
            }
        }
        c.validate()?;
        Ok(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_overrides_defaults() {
        let c = SuiteConfig::parse("# quick\nseed = 7\ngammas = w, w^2 \nsamples_per_claim=10\n").unwrap();
        assert_eq!(c.seed, 7);
        assert_eq!(c.gammas, vec![Ordinal::omega(), "w^2".parse().unwrap()]);
        assert_eq!(c.samples_per_claim, 10);
        assert_eq!(c.tail_lengths, vec![1, 2, 3]);
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!(SuiteConfig::parse("gammas = w+1").is_err());
        assert!(SuiteConfig::parse("colour = red").is_err());
        assert!(SuiteConfig::parse("seed").is_err());
        assert!(SuiteConfig::parse("seed = -1").is_err());
    }
}
