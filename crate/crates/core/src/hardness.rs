//! Hardness drivers: gap instances over 2-CNF with `p = 2` and
//! bounded-occurrence 3-CNF instances with `p = ⌊B/2⌋`.
//!
//! Thresholds are exact rationals. With `td = 6m − m' + 8n + 1`, a formula
//! with `m' ≥ (1 − ε)m` gives `td ≤ k + 1` for the threshold
//! `k = 6m − (1 − ε)m + 8n`, and one with `m' ≤ (251/252 − ε)m` gives
//! `td ≥ 6m − (251/252 + ε)m + 8n + 1`, which the feasibility check keeps
//! strictly above `(1 + δ)(k + 1)`.

use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::cnf::{CnfError, CnfFormula, Literal};
use crate::reduction::{build_h_phi, check_occurrences, predicted_td, GadgetGraph, InstanceSidecar, ReductionError};

pub type Rational = Ratio<i64>;

/// `1/2605`.
pub fn default_delta() -> Rational {
    Rational::new(1, 2605)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HardnessError {
    #[error("expected a {expected}-CNF formula, got width {found}")]
    WrongWidth { expected: usize, found: usize },
    #[error("x{variable} occurs {occurrences} times; gap instances need 3 or 4")]
    OccurrenceProfile { variable: usize, occurrences: usize },
    #[error("x{variable} occurs {occurrences} times, more than B = {bound}")]
    OccurrenceBound { variable: usize, occurrences: usize, bound: usize },
    #[error("2m = {two_m} is below 3n = {three_n}")]
    ClauseCount { two_m: usize, three_n: usize },
    #[error("epsilon must be positive, got {0}")]
    InvalidEpsilon(Rational),
    #[error("delta must lie in (0, 1/2604), got {0}")]
    InvalidDelta(Rational),
    #[error("gap inequality fails: (1 + δ)(k + 1) = {lhs} is not below {rhs}")]
    Infeasible { lhs: Rational, rhs: Rational },
    #[error("B must be at least 2, got {0}")]
    InvalidB(usize),
    #[error(transparent)]
    Reduction(#[from] ReductionError),
    #[error(transparent)]
    Cnf(#[from] CnfError),
}

#[derive(Debug, Clone)]
pub struct GapInstance {
    pub gadget: GadgetGraph,
    pub n: usize,
    pub m: usize,
    pub epsilon: Rational,
    pub delta: Rational,
    /// `6m − (1 − ε)m + 8n`.
    pub threshold_k: Rational,
    /// `1 + δ`.
    pub gap_factor: Rational,
}

impl GapInstance {
    /// `6m − m' + 8n + 1`.
    pub fn predicted_td(&self, m_star: usize) -> usize {
        let cvg = self.gadget.clause_variable.as_ref().expect("gap instances come from formulas");
        predicted_td(&cvg.formula, 2, m_star)
    }

    /// Largest treedepth on the satisfiable side: `⌊k⌋ + 1`.
    pub fn yes_bound(&self) -> i64 {
        self.threshold_k.floor().to_integer() + 1
    }

    /// Smallest treedepth on the far side: `⌈(1 + δ)(k + 1)⌉`.
    pub fn no_bound(&self) -> i64 {
        (self.gap_factor * (self.threshold_k + 1)).ceil().to_integer()
    }

    pub fn sidecar(&self, m_star: Option<usize>) -> InstanceSidecar {
        let mut s = InstanceSidecar::for_h_phi(&self.gadget, m_star).expect("built from a formula");
        s.threshold_k = Some(self.threshold_k.to_string());
        s.gap_factor = Some(self.gap_factor.to_string());
        s
    }
}

fn r(x: usize) -> Rational {
    Rational::from_integer(x as i64)
}

/// `(6m − (1 − ε)m + 8n + 1)(1 + δ)` and `6m − (251/252 + ε)m + 8n + 1`.
pub fn gap_inequality(n: usize, m: usize, epsilon: Rational, delta: Rational) -> (Rational, Rational) {
    let one = Rational::from_integer(1);
    let lhs = (r(6 * m) - (one - epsilon) * r(m) + r(8 * n) + one) * (one + delta);
    let rhs = r(6 * m) - (Rational::new(251, 252) + epsilon) * r(m) + r(8 * n) + one;
    (lhs, rhs)
}

pub fn gap_instance(formula: &CnfFormula, epsilon: Rational) -> Result<GapInstance, HardnessError> {
    gap_instance_with_delta(formula, epsilon, default_delta())
}

pub fn gap_instance_with_delta(
    formula: &CnfFormula,
    epsilon: Rational,
    delta: Rational,
) -> Result<GapInstance, HardnessError> {
    if formula.k() != 2 {
        return Err(HardnessError::WrongWidth { expected: 2, found: formula.k() });
    }
    for (variable, &occurrences) in formula.occurrences().iter().enumerate().skip(1) {
        if !(3..=4).contains(&occurrences) {
            return Err(HardnessError::OccurrenceProfile { variable, occurrences });
        }
    }
    let (n, m) = (formula.num_variables(), formula.num_clauses());
    if 2 * m < 3 * n {
        return Err(HardnessError::ClauseCount { two_m: 2 * m, three_n: 3 * n });
    }
    if epsilon <= Rational::from_integer(0) {
        return Err(HardnessError::InvalidEpsilon(epsilon));
    }
    if delta <= Rational::from_integer(0) || delta >= Rational::new(1, 2604) {
        return Err(HardnessError::InvalidDelta(delta));
    }
    let (lhs, rhs) = gap_inequality(n, m, epsilon, delta);
    if lhs >= rhs {
        return Err(HardnessError::Infeasible { lhs, rhs });
    }
    let gadget = build_h_phi(formula, 2)?;
    let threshold_k = r(6 * m) - (Rational::from_integer(1) - epsilon) * r(m) + r(8 * n);
    Ok(GapInstance { gadget, n, m, epsilon, delta, threshold_k, gap_factor: Rational::from_integer(1) + delta })
}

/// Random 2-CNF in which every variable occurs exactly `occurrences[j]`
/// times (3 or 4), clauses pairing distinct variables. Returns `None` when
/// no pairing was found within a few attempts.
pub fn gen_gap_formula(occurrences: &[usize], seed: u64) -> Option<CnfFormula> {
    let n = occurrences.len();
    let total: usize = occurrences.iter().sum();
    if total % 2 == 1 || occurrences.iter().any(|o| !(3..=4).contains(o)) {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut slots: Vec<usize> = (1..=n).flat_map(|j| std::iter::repeat_n(j, occurrences[j - 1])).collect();
    for _ in 0..256 {
        slots.shuffle(&mut rng);
        if slots.chunks(2).all(|c| c[0] != c[1]) {
            let clauses = slots
                .chunks(2)
                .map(|c| c.iter().map(|&j| Literal::new(j, rand::Rng::gen_bool(&mut rng, 0.5)).unwrap()).collect())
                .collect();
            return CnfFormula::new(n, 2, clauses).ok();
        }
    }
    None
}

#[derive(Debug, Clone)]
pub struct EthInstance {
    pub gadget: GadgetGraph,
    pub b: usize,
    pub p: usize,
    /// `13m + 8pn + 1`: the treedepth exactly when every clause is satisfiable.
    pub satisfiable_td: usize,
    /// The same value without the `+ 1`.
    pub satisfiable_td_without_offset: usize,
}

impl EthInstance {
    pub fn predicted_td(&self, m_star: usize) -> usize {
        let cvg = self.gadget.clause_variable.as_ref().expect("built from a formula");
        predicted_td(&cvg.formula, self.p, m_star)
    }

    pub fn sidecar(&self, m_star: Option<usize>) -> InstanceSidecar {
        let mut s = InstanceSidecar::for_h_phi(&self.gadget, m_star).expect("built from a formula");
        s.satisfiable_td = Some(self.satisfiable_td);
        s.satisfiable_td_without_offset = Some(self.satisfiable_td_without_offset);
        s
    }
}

pub fn eth_instance(formula: &CnfFormula, b: usize) -> Result<EthInstance, HardnessError> {
    if formula.k() != 3 {
        return Err(HardnessError::WrongWidth { expected: 3, found: formula.k() });
    }
    if b < 2 {
        return Err(HardnessError::InvalidB(b));
    }
    for (variable, &occurrences) in formula.occurrences().iter().enumerate().skip(1) {
        if occurrences > b {
            return Err(HardnessError::OccurrenceBound { variable, occurrences, bound: b });
        }
    }
    let p = b / 2;
    check_occurrences(formula, p)?;
    let gadget = build_h_phi(formula, p)?;
    let (n, m) = (formula.num_variables(), formula.num_clauses());
    let satisfiable_td = predicted_td(formula, p, m);
    debug_assert_eq!(satisfiable_td, 13 * m + 8 * p * n + 1);
    Ok(EthInstance { gadget, b, p, satisfiable_td, satisfiable_td_without_offset: satisfiable_td - 1 })
}
