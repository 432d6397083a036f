//! The clause–variable graph `G(φ, p)`, the clique gadget, their
//! composition `H(φ, p)`, closed-form predictions, and certificate builders
//! for both directions of the cover/valuation correspondence.

mod clause_graph;
mod gadget;
mod sidecar;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cnf::{CnfError, CnfFormula};
use crate::graph::GraphError;

pub use clause_graph::{
    build_clause_variable_graph, cover_to_valuation, normalize_cover, valuation_to_cover, ClauseVariableGraph,
};
pub use gadget::{build_gadget, build_h_phi, cover_to_elimination_forest, GadgetGraph};
pub use sidecar::InstanceSidecar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error("occurrence parameter p must be at least 1")]
    InvalidP,
    #[error("clause width k = {0} is below 2")]
    WidthTooSmall(usize),
    #[error("clique size ℓ must be at least 1")]
    InvalidEll,
    #[error("tripartition part {0} is empty")]
    EmptyPart(char),
    #[error("the given parts are not a tripartition of the graph")]
    InvalidTripartition,
    #[error("x{variable} occurs {occurrences} times, more than 2p + 1 = {allowed}")]
    OccurrenceViolation { variable: usize, occurrences: usize, allowed: usize },
    #[error("vertex set is not a vertex cover")]
    NotACover,
    #[error("cover is not normalised: x{0} does not have exactly one block fully inside")]
    NotNormalized(usize),
    #[error(transparent)]
    Cnf(#[from] CnfError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// `k`, `p` and the block size `γ = 2^(k−1)·p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionParams {
    pub k: usize,
    pub p: usize,
    pub gamma: usize,
}

impl ReductionParams {
    pub fn new(k: usize, p: usize) -> Result<Self, ReductionError> {
        if k < 2 {
            return Err(ReductionError::WidthTooSmall(k));
        }
        if p < 1 {
            return Err(ReductionError::InvalidP);
        }
        Ok(ReductionParams { k, p, gamma: (1 << (k - 1)) * p })
    }

    /// `2^k − 1`, the number of clause-tuple vertices per clause.
    pub fn tuples_per_clause(&self) -> usize {
        (1 << self.k) - 1
    }
}

/// Checks that every variable occurs at most `2p + 1` times.
pub fn check_occurrences(formula: &CnfFormula, p: usize) -> Result<(), ReductionError> {
    let allowed = 2 * p + 1;
    for (variable, &occurrences) in formula.occurrences().iter().enumerate().skip(1) {
        if occurrences > allowed {
            return Err(ReductionError::OccurrenceViolation { variable, occurrences, allowed });
        }
    }
    Ok(())
}

/// `ℓ = |A ∪ B₊| = (2^k − 1)m + 2^(k−1)pn`.
pub fn gadget_ell(formula: &CnfFormula, p: usize) -> usize {
    let k = formula.k();
    ((1 << k) - 1) * formula.num_clauses() + (1 << (k - 1)) * p * formula.num_variables()
}

/// `(2^k − 1)m − m' + 2^(k−1)pn`.
pub fn predicted_vc(formula: &CnfFormula, p: usize, m_star: usize) -> usize {
    let m = formula.num_clauses();
    assert!(m_star <= m, "m' = {m_star} exceeds the clause count {m}");
    let k = formula.k();
    ((1 << k) - 1) * m - m_star + (1 << (k - 1)) * p * formula.num_variables()
}

/// `2(2^k − 1)m − m' + 2^k·pn + 1`.
pub fn predicted_td(formula: &CnfFormula, p: usize, m_star: usize) -> usize {
    let m = formula.num_clauses();
    assert!(m_star <= m, "m' = {m_star} exceeds the clause count {m}");
    let k = formula.k();
    2 * ((1 << k) - 1) * m - m_star + (1 << k) * p * formula.num_variables() + 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn phi(n: usize, clauses: &[&[i64]]) -> CnfFormula {
        CnfFormula::from_signed(n, clauses).unwrap()
    }

    #[test]
    fn params() {
        assert_eq!(ReductionParams::new(3, 2).unwrap().gamma, 8);
        assert_eq!(ReductionParams::new(2, 1).unwrap().gamma, 2);
        assert_eq!(ReductionParams::new(1, 1), Err(ReductionError::WidthTooSmall(1)));
        assert_eq!(ReductionParams::new(2, 0), Err(ReductionError::InvalidP));
    }

    #[test]
    fn predicted_vc_examples() {
        let f = phi(2, &[&[1, 2], &[-1, 2]]);
        assert_eq!(predicted_vc(&f, 1, 2), 8);
        let g = phi(3, &[&[1, 2, 3]]);
        assert_eq!(predicted_vc(&g, 1, 1), 18);
        // m' = 0: all of A plus one block per variable
        assert_eq!(predicted_vc(&f, 1, 0), 3 * 2 + 2 * 2);
    }

    #[test]
    fn predicted_td_examples() {
        let f = phi(2, &[&[1, 2], &[-1, 2]]);
        assert_eq!(predicted_td(&f, 1, 2), 19);
        // k = 2, p = 2 specialises to 6m − m' + 8n + 1
        for (n, clauses) in [(2usize, vec![vec![1i64, 2], vec![-1, 2], vec![1, -2]]), (3, vec![vec![1, 3]])] {
            let refs: Vec<&[i64]> = clauses.iter().map(Vec::as_slice).collect();
            let f = phi(n, &refs);
            let m = f.num_clauses();
            for m_star in 0..=m {
                assert_eq!(predicted_td(&f, 2, m_star), 6 * m - m_star + 8 * n + 1);
            }
        }
    }

    #[test]
    fn td_is_vc_plus_ell_plus_one() {
        for (n, k) in [(2, 2), (3, 3), (5, 2), (4, 4)] {
            let clause: Vec<i64> = (1..=k as i64).collect();
            let f = phi(n, &[&clause, &clause]);
            for p in 1..4 {
                for m_star in 0..=2 {
                    assert_eq!(
                        predicted_td(&f, p, m_star),
                        predicted_vc(&f, p, m_star) + gadget_ell(&f, p) + 1
                    );
                }
            }
        }
    }

    #[test]
    fn occurrence_check_names_variable() {
        let f = phi(4, &[&[1, 2], &[-1, 3], &[1, 4], &[-1, 2]]);
        assert_eq!(
            check_occurrences(&f, 1),
            Err(ReductionError::OccurrenceViolation { variable: 1, occurrences: 4, allowed: 3 })
        );
        assert!(check_occurrences(&f, 2).is_ok());
    }
}
