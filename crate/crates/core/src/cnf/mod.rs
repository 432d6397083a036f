//! k-CNF formulas: representation, DIMACS I/O, generation and the
//! exhaustive MAX-SAT oracle.

mod dimacs;
mod generate;
mod maxsat;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use dimacs::{parse_dimacs, write_dimacs};
pub use generate::gen_random_kcnf;
pub use maxsat::{max_sat_oracle, max_sat_oracle_with_cap, MaxSat, DEFAULT_ENUMERATION_CAP};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CnfError {
    #[error("line {line}: malformed header: {reason}")]
    MalformedHeader { line: usize, reason: String },
    #[error("line {line}: unexpected token {token:?}")]
    BadToken { line: usize, token: String },
    #[error("header declares {declared} clauses but {found} were read")]
    ClauseCountMismatch { declared: usize, found: usize },
    #[error("clause {clause} has width {found}, expected uniform width {expected}")]
    NonUniformWidth { clause: usize, expected: usize, found: usize },
    #[error("clause {clause} repeats variable x{variable}")]
    RepeatedVariable { clause: usize, variable: usize },
    #[error("clause {clause} references x{variable} but the formula has {num_variables} variables")]
    VariableOutOfRange { clause: usize, variable: usize, num_variables: usize },
    #[error("variable index 0 is not a literal")]
    ZeroVariable,
    #[error("{num_variables} variables exceed the enumeration cap of {cap}")]
    EnumerationCap { num_variables: usize, cap: usize },
    #[error("infeasible generator parameters: {0}")]
    Infeasible(String),
    #[error("valuation has {found} variables, formula has {expected}")]
    ValuationSize { expected: usize, found: usize },
}

/// A variable or its negation. Variables are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Literal {
    variable: usize,
    negated: bool,
}

impl Literal {
    pub fn new(variable: usize, negated: bool) -> Result<Self, CnfError> {
        if variable == 0 {
            return Err(CnfError::ZeroVariable);
        }
        Ok(Literal { variable, negated })
    }

    pub fn positive(variable: usize) -> Self {
        assert!(variable >= 1, "variables are 1-based");
        Literal { variable, negated: false }
    }

    pub fn negative(variable: usize) -> Self {
        assert!(variable >= 1, "variables are 1-based");
        Literal { variable, negated: true }
    }

    /// DIMACS convention: `-3` is ¬x3.
    pub fn from_dimacs(value: i64) -> Result<Self, CnfError> {
        if value == 0 {
            return Err(CnfError::ZeroVariable);
        }
        Ok(Literal { variable: value.unsigned_abs() as usize, negated: value < 0 })
    }

    pub fn to_dimacs(self) -> i64 {
        let v = self.variable as i64;
        if self.negated {
            -v
        } else {
            v
        }
    }

    pub fn variable(self) -> usize {
        self.variable
    }

    pub fn is_negated(self) -> bool {
        self.negated
    }

    pub fn negate(self) -> Self {
        Literal { variable: self.variable, negated: !self.negated }
    }

    /// Whether the literal is true under `valuation`.
    pub fn holds(self, valuation: &Valuation) -> bool {
        valuation.value(self.variable) != self.negated
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            write!(f, "¬x{}", self.variable)
        } else {
            write!(f, "x{}", self.variable)
        }
    }
}

/// A k-CNF formula over variables `x1..=xn`.
///
/// Every clause has exactly `k` literals over pairwise distinct variables.
/// Clauses may repeat.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CnfFormula {
    num_variables: usize,
    k: usize,
    clauses: Vec<Vec<Literal>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    comments: Vec<String>,
}

impl CnfFormula {
    pub fn new(num_variables: usize, k: usize, clauses: Vec<Vec<Literal>>) -> Result<Self, CnfError> {
        for (i, clause) in clauses.iter().enumerate() {
            if clause.len() != k {
                return Err(CnfError::NonUniformWidth { clause: i + 1, expected: k, found: clause.len() });
            }
            for (a, lit) in clause.iter().enumerate() {
                if lit.variable > num_variables {
                    return Err(CnfError::VariableOutOfRange {
                        clause: i + 1,
                        variable: lit.variable,
                        num_variables,
                    });
                }
                if clause[..a].iter().any(|l| l.variable == lit.variable) {
                    return Err(CnfError::RepeatedVariable { clause: i + 1, variable: lit.variable });
                }
            }
        }
        Ok(CnfFormula { num_variables, k, clauses, comments: Vec::new() })
    }

    /// Builds a formula from DIMACS-style signed integers, inferring `k`
    /// from the first clause.
    pub fn from_signed(num_variables: usize, clauses: &[&[i64]]) -> Result<Self, CnfError> {
        let k = clauses.first().map_or(0, |c| c.len());
        let clauses = clauses
            .iter()
            .map(|c| c.iter().map(|&v| Literal::from_dimacs(v)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        CnfFormula::new(num_variables, k, clauses)
    }

    pub(crate) fn with_comments(mut self, comments: Vec<String>) -> Self {
        self.comments = comments;
        self
    }

    pub fn num_variables(&self) -> usize {
        self.num_variables
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn clauses(&self) -> &[Vec<Literal>] {
        &self.clauses
    }

    /// Comment lines read from DIMACS input, without the leading `c`.
    pub fn comments(&self) -> &[String] {
        &self.comments
    }

    /// Occurrences of each variable (index 0 unused).
    pub fn occurrences(&self) -> Vec<usize> {
        let mut occ = vec![0; self.num_variables + 1];
        for lit in self.clauses.iter().flatten() {
            occ[lit.variable] += 1;
        }
        occ
    }

    /// Number of clauses containing exactly this literal.
    pub fn literal_occurrences(&self, literal: Literal) -> usize {
        self.clauses.iter().flatten().filter(|&&l| l == literal).count()
    }

    /// Maximum number of literal occurrences (either polarity) of a variable.
    pub fn max_occurrence(&self) -> usize {
        self.occurrences().into_iter().max().unwrap_or(0)
    }

    /// Least `p ≥ 1` such that every variable occurs at most `2p + 1` times.
    pub fn min_valid_p(&self) -> usize {
        let occ = self.max_occurrence();
        occ.saturating_sub(1).div_ceil(2).max(1)
    }

    /// Number of clauses with at least one literal true under `valuation`.
    pub fn count_satisfied(&self, valuation: &Valuation) -> usize {
        self.clauses.iter().filter(|c| c.iter().any(|l| l.holds(valuation))).count()
    }

    /// Number of clauses that repeat an earlier clause as a literal set.
    pub fn duplicate_clause_count(&self) -> usize {
        let mut seen = std::collections::HashSet::new();
        self.clauses
            .iter()
            .filter(|c| {
                let mut key = (*c).clone();
                key.sort();
                !seen.insert(key)
            })
            .count()
    }
}

impl fmt::Display for CnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.clauses.is_empty() {
            return write!(f, "⊤");
        }
        for (i, clause) in self.clauses.iter().enumerate() {
            if i > 0 {
                write!(f, " ∧ ")?;
            }
            write!(f, "(")?;
            for (j, lit) in clause.iter().enumerate() {
                if j > 0 {
                    write!(f, " ∨ ")?;
                }
                write!(f, "{lit}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// A total assignment to `x1..=xn`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Valuation {
    assignment: Vec<bool>,
}

impl Valuation {
    /// `assignment[j - 1]` is the value of `xj`.
    pub fn new(assignment: Vec<bool>) -> Self {
        Valuation { assignment }
    }

    pub fn all_false(num_variables: usize) -> Self {
        Valuation { assignment: vec![false; num_variables] }
    }

    pub fn num_variables(&self) -> usize {
        self.assignment.len()
    }

    pub fn value(&self, variable: usize) -> bool {
        self.assignment[variable - 1]
    }

    pub fn set(&mut self, variable: usize, value: bool) {
        self.assignment[variable - 1] = value;
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.assignment
    }

    /// The literal of `variable` made true by this valuation.
    pub fn true_literal(&self, variable: usize) -> Literal {
        Literal { variable, negated: !self.value(variable) }
    }

    pub fn check_against(&self, formula: &CnfFormula) -> Result<(), CnfError> {
        if self.assignment.len() != formula.num_variables {
            return Err(CnfError::ValuationSize {
                expected: formula.num_variables,
                found: self.assignment.len(),
            });
        }
        Ok(())
    }
}
