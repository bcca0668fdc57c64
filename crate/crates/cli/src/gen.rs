//! Seeded random instances.
//!
//! Both generators draw from a ChaCha8 stream keyed by the seed, so the same
//! parameters and seed produce the same instance on every platform.

use cocount_core::{Graph, MonotoneFormula};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("graph must have at least 1 vertex")]
    ZeroVertices,
    #[error("edge probability {num}/{den} is not a rational in [0, 1]")]
    BadProbability { num: u64, den: u64 },
    #[error("formula needs at least 2 variables, got {0}")]
    TooFewVariables(usize),
    #[error("formula needs at least 1 clause")]
    ZeroClauses,
    #[error("{num_vars} variables cannot all occur in {num_clauses} clauses")]
    UncoverableVariables { num_vars: usize, num_clauses: usize },
    #[error("no draw covered every variable in {0} attempts")]
    CoverageRetriesExhausted(usize),
}

/// Random graph on `n` vertices: each pair becomes an edge independently
/// with probability `p_num/p_den`.
pub fn gen_random_graph(n: usize, p_num: u64, p_den: u64, seed: u64) -> Result<Graph, GenError> {
    if n == 0 {
        return Err(GenError::ZeroVertices);
    }
    if p_den == 0 || p_num > p_den {
        return Err(GenError::BadProbability {
            num: p_num,
            den: p_den,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_range(0..p_den) < p_num {
                edges.push((u, v));
            }
        }
    }
    Ok(Graph::new(n, edges).expect("generated pairs are distinct and in range"))
}

const COVERAGE_RETRY_CAP: usize = 100_000;

/// Random monotone 2-CNF formula: `num_clauses` clauses drawn uniformly
/// among distinct variable pairs, redrawing the whole formula until every
/// variable occurs somewhere (so the result feeds straight into the
/// reductions). Needs `num_vars <= 2 * num_clauses` to be coverable at all.
pub fn gen_random_formula(
    num_vars: usize,
    num_clauses: usize,
    seed: u64,
) -> Result<MonotoneFormula, GenError> {
    if num_vars < 2 {
        return Err(GenError::TooFewVariables(num_vars));
    }
    if num_clauses == 0 {
        return Err(GenError::ZeroClauses);
    }
    if num_vars > 2 * num_clauses {
        return Err(GenError::UncoverableVariables {
            num_vars,
            num_clauses,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..COVERAGE_RETRY_CAP {
        let mut used = vec![false; num_vars + 1];
        let mut clauses = Vec::with_capacity(num_clauses);
        for _ in 0..num_clauses {
            let u = rng.random_range(1..=num_vars);
            let v = loop {
                let v = rng.random_range(1..=num_vars);
                if v != u {
                    break v;
                }
            };
            used[u] = true;
            used[v] = true;
            clauses.push((u, v));
        }
        if used[1..].iter().all(|&b| b) {
            return Ok(MonotoneFormula::new(num_vars, clauses).expect("drawn clauses are valid"));
        }
    }
    Err(GenError::CoverageRetriesExhausted(COVERAGE_RETRY_CAP))
}
