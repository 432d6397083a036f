use super::{CnfError, CnfFormula, Valuation};

pub const DEFAULT_ENUMERATION_CAP: usize = 24;

/// Result of the exhaustive MAX-SAT search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxSat {
    pub m_star: usize,
    pub witness: Valuation,
}

pub fn max_sat_oracle(formula: &CnfFormula) -> Result<MaxSat, CnfError> {
    max_sat_oracle_with_cap(formula, DEFAULT_ENUMERATION_CAP)
}

/// Enumerates all `2^n` valuations and returns the best one.
///
/// Valuations are visited in lexicographic order of `(x1, ..., xn)` with
/// false before true, and only strict improvements replace the incumbent,
/// so the witness is the lexicographically smallest optimum.
pub fn max_sat_oracle_with_cap(formula: &CnfFormula, cap: usize) -> Result<MaxSat, CnfError> {
    let n = formula.num_variables();
    if n > cap || n > 63 {
        return Err(CnfError::EnumerationCap { num_variables: n, cap: cap.min(63) });
    }
    let bit = |variable: usize| 1u64 << (n - variable);
    let masks: Vec<(u64, u64)> = formula
        .clauses()
        .iter()
        .map(|clause| {
            clause.iter().fold((0, 0), |(pos, neg), lit| {
                if lit.is_negated() {
                    (pos, neg | bit(lit.variable()))
                } else {
                    (pos | bit(lit.variable()), neg)
                }
            })
        })
        .collect();
    let m = masks.len();

    let mut best = 0;
    let mut best_bits = 0u64;
    let mut found = false;
    for bits in 0..(1u64 << n) {
        let sat = masks.iter().filter(|&&(pos, neg)| bits & pos != 0 || !bits & neg != 0).count();
        if !found || sat > best {
            best = sat;
            best_bits = bits;
            found = true;
            if best == m {
                break;
            }
        }
    }
    let witness = Valuation::new((1..=n).map(|j| best_bits & bit(j) != 0).collect());
    Ok(MaxSat { m_star: best, witness })
}
