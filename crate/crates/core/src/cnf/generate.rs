use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{CnfError, CnfFormula, Literal};

const RANDOM_ATTEMPTS: usize = 64;

/// Random uniform k-CNF with at most `max_occ` occurrences per variable.
///
/// Clauses draw `k` distinct variables uniformly among those with spare
/// capacity. If that dead-ends, the draw is retried; after
/// `RANDOM_ATTEMPTS` failures each clause takes the `k` variables with the
/// most spare capacity (random tie-break), which always succeeds when
/// `m·k ≤ n·max_occ`.
pub fn gen_random_kcnf(n: usize, m: usize, k: usize, max_occ: usize, seed: u64) -> Result<CnfFormula, CnfError> {
    if k == 0 || k > n {
        return Err(CnfError::Infeasible(format!("clause width {k} needs 1 ≤ k ≤ n = {n}")));
    }
    if m.saturating_mul(k) > n.saturating_mul(max_occ) {
        return Err(CnfError::Infeasible(format!(
            "{m} clauses of width {k} need {} occurrences, but {n} variables allow only {}",
            m * k,
            n * max_occ
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_ATTEMPTS {
        if let Some(clauses) = try_uniform(&mut rng, n, m, k, max_occ) {
            return finish(n, k, clauses, &mut rng);
        }
    }
    let clauses = balanced(&mut rng, n, m, k, max_occ);
    finish(n, k, clauses, &mut rng)
}

fn try_uniform(rng: &mut ChaCha8Rng, n: usize, m: usize, k: usize, max_occ: usize) -> Option<Vec<Vec<usize>>> {
    let mut remaining = vec![max_occ; n + 1];
    let mut clauses = Vec::with_capacity(m);
    for _ in 0..m {
        let available: Vec<usize> = (1..=n).filter(|&v| remaining[v] > 0).collect();
        if available.len() < k {
            return None;
        }
        let vars: Vec<usize> = available.choose_multiple(rng, k).copied().collect();
        for &v in &vars {
            remaining[v] -= 1;
        }
        clauses.push(vars);
    }
    Some(clauses)
}

fn balanced(rng: &mut ChaCha8Rng, n: usize, m: usize, k: usize, max_occ: usize) -> Vec<Vec<usize>> {
    let mut remaining = vec![max_occ; n + 1];
    let mut clauses = Vec::with_capacity(m);
    for _ in 0..m {
        let mut order: Vec<usize> = (1..=n).collect();
        order.shuffle(rng);
        order.sort_by_key(|&v| std::cmp::Reverse(remaining[v]));
        let vars: Vec<usize> = order[..k].to_vec();
        for &v in &vars {
            remaining[v] -= 1;
        }
        clauses.push(vars);
    }
    clauses
}

fn finish(n: usize, k: usize, clauses: Vec<Vec<usize>>, rng: &mut ChaCha8Rng) -> Result<CnfFormula, CnfError> {
    let clauses = clauses
        .into_iter()
        .map(|vars| vars.into_iter().map(|v| Literal::new(v, rng.gen_bool(0.5))).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    CnfFormula::new(n, k, clauses)
}
