use std::ops::Range;

use super::{ReductionError, ReductionParams};
use crate::cnf::{CnfFormula, Literal, Valuation};
use crate::graph::{LabeledGraph, Tripartition, VertexLabel, VertexSet};

/// `G(φ, p)` with its tripartition `(A, B₊, B₋)`.
///
/// Vertex ids: `A` by clause then tuple mask (masks `1..2^k`), then `B₊` by
/// variable then `t`, then `B₋` likewise. Bit `t` of a tuple mask is set
/// iff `s_t` is the clause's own literal `ℓ_t`, so mask 0 (all literals
/// negated) is the excluded tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClauseVariableGraph {
    pub graph: LabeledGraph,
    pub tripartition: Tripartition,
    pub params: ReductionParams,
    pub formula: CnfFormula,
}

impl ClauseVariableGraph {
    pub fn num_a(&self) -> usize {
        self.formula.num_clauses() * self.params.tuples_per_clause()
    }

    /// Id of `a_i(..)` for 0-based clause index `clause`.
    pub fn a_vertex(&self, clause: usize, mask: u32) -> usize {
        debug_assert!(mask != 0 && (mask as usize) <= self.params.tuples_per_clause());
        clause * self.params.tuples_per_clause() + mask as usize - 1
    }

    /// Vertices `A(C_i)` for 0-based clause index `clause`.
    pub fn clause_tuples(&self, clause: usize) -> Range<usize> {
        let w = self.params.tuples_per_clause();
        clause * w..(clause + 1) * w
    }

    pub fn pos_block(&self, variable: usize) -> Range<usize> {
        let start = self.num_a() + (variable - 1) * self.params.gamma;
        start..start + self.params.gamma
    }

    pub fn neg_block(&self, variable: usize) -> Range<usize> {
        let start = self.num_a() + (self.formula.num_variables() + variable - 1) * self.params.gamma;
        start..start + self.params.gamma
    }

    /// `B(ℓ)`.
    pub fn block(&self, literal: Literal) -> Range<usize> {
        if literal.is_negated() {
            self.neg_block(literal.variable())
        } else {
            self.pos_block(literal.variable())
        }
    }

    /// `(s_1, ..., s_k)` of tuple `mask` for 0-based clause index `clause`.
    pub fn tuple_literals(&self, clause: usize, mask: u32) -> Vec<Literal> {
        self.formula.clauses()[clause]
            .iter()
            .enumerate()
            .map(|(t, &lit)| if mask >> t & 1 == 1 { lit } else { lit.negate() })
            .collect()
    }

    /// All clause-tuple vertices whose tuple contains `literal`: the
    /// `A`-neighbourhood of `B(literal)`.
    pub fn tuples_containing(&self, literal: Literal) -> Vec<usize> {
        let mut out = Vec::new();
        for (i, clause) in self.formula.clauses().iter().enumerate() {
            let Some(t) = clause.iter().position(|l| l.variable() == literal.variable()) else {
                continue;
            };
            let own = clause[t] == literal;
            for mask in 1..=self.params.tuples_per_clause() as u32 {
                if (mask >> t & 1 == 1) == own {
                    out.push(self.a_vertex(i, mask));
                }
            }
        }
        out
    }
}

pub fn build_clause_variable_graph(formula: &CnfFormula, p: usize) -> Result<ClauseVariableGraph, ReductionError> {
    let params = ReductionParams::new(formula.k(), p)?;
    let n = formula.num_variables();
    let m = formula.num_clauses();
    let tuples = params.tuples_per_clause();
    let num_a = m * tuples;
    let total = num_a + 2 * params.gamma * n;

    let mut cvg = ClauseVariableGraph {
        graph: LabeledGraph::new(total),
        tripartition: Tripartition::new(VertexSet::new(), VertexSet::new(), VertexSet::new()),
        params,
        formula: formula.clone(),
    };
    for i in 0..m {
        for mask in 1..=tuples as u32 {
            let a = cvg.a_vertex(i, mask);
            cvg.graph.set_label(a, VertexLabel::ClauseTuple { clause: i + 1, mask });
        }
    }
    for j in 1..=n {
        for (t, b) in cvg.pos_block(j).enumerate() {
            cvg.graph.set_label(b, VertexLabel::PosBlock { variable: j, t: t + 1 });
        }
        for (t, c) in cvg.neg_block(j).enumerate() {
            cvg.graph.set_label(c, VertexLabel::NegBlock { variable: j, t: t + 1 });
        }
    }

    for j in 1..=n {
        for b in cvg.pos_block(j) {
            for c in cvg.neg_block(j) {
                cvg.graph.add_edge(b, c)?;
            }
        }
    }
    for i in 0..m {
        for mask in 1..=tuples as u32 {
            let a = cvg.a_vertex(i, mask);
            for s in cvg.tuple_literals(i, mask) {
                for b in cvg.block(s) {
                    cvg.graph.add_edge(a, b)?;
                }
            }
        }
    }

    cvg.tripartition = Tripartition::new(
        (0..num_a).collect(),
        (num_a..num_a + params.gamma * n).collect(),
        (num_a + params.gamma * n..total).collect(),
    );
    Ok(cvg)
}

/// The cover built from a valuation `F`: every tuple vertex whose literals
/// are not all in `F`, plus `B(ℓ)` for each literal `ℓ ∈ F`.
pub fn valuation_to_cover(cvg: &ClauseVariableGraph, valuation: &Valuation) -> Result<VertexSet, ReductionError> {
    valuation.check_against(&cvg.formula)?;
    let mut cover = VertexSet::new();
    for i in 0..cvg.formula.num_clauses() {
        for mask in 1..=cvg.params.tuples_per_clause() as u32 {
            if !cvg.tuple_literals(i, mask).iter().all(|s| s.holds(valuation)) {
                cover.insert(cvg.a_vertex(i, mask));
            }
        }
    }
    for j in 1..=cvg.formula.num_variables() {
        cover.extend(cvg.block(valuation.true_literal(j)));
    }
    Ok(cover)
}

fn block_state(cover: &VertexSet, block: Range<usize>) -> (usize, usize) {
    let len = block.len();
    (block.filter(|&v| cover.contains(v)).count(), len)
}

/// Turns any vertex cover into one containing exactly one block per variable.
///
/// A partially included block is dropped: its excluded twin has every
/// neighbour in the cover, so the whole block can go. When both blocks of
/// `x_j` are inside, the block of a literal occurring at most `p` times
/// (the positive one if both qualify) is exchanged for its `A`-neighbours.
///
/// The exchange adds the tuples containing the dropped literal, including
/// tuples of clauses where the opposite literal occurs, so it can enlarge
/// the cover when those are numerous.
pub fn normalize_cover(cvg: &ClauseVariableGraph, cover: &VertexSet) -> Result<VertexSet, ReductionError> {
    if !cvg.graph.is_vertex_cover(cover) {
        return Err(ReductionError::NotACover);
    }
    let mut out = cover.clone();
    let p = cvg.params.p;
    for j in 1..=cvg.formula.num_variables() {
        for block in [cvg.pos_block(j), cvg.neg_block(j)] {
            let (inside, len) = block_state(&out, block.clone());
            if inside > 0 && inside < len {
                for v in block {
                    out.remove(v);
                }
            }
        }
        let pos_full = block_state(&out, cvg.pos_block(j)).0 == cvg.params.gamma;
        let neg_full = block_state(&out, cvg.neg_block(j)).0 == cvg.params.gamma;
        if pos_full && neg_full {
            let positive = Literal::positive(j);
            let dropped = if cvg.formula.literal_occurrences(positive) <= p {
                positive
            } else if cvg.formula.literal_occurrences(positive.negate()) <= p {
                positive.negate()
            } else {
                let occurrences = cvg.formula.occurrences()[j];
                return Err(ReductionError::OccurrenceViolation { variable: j, occurrences, allowed: 2 * p + 1 });
            };
            for v in cvg.block(dropped) {
                out.remove(v);
            }
            out.extend(cvg.tuples_containing(dropped));
        }
    }
    debug_assert!(cvg.graph.is_vertex_cover(&out));
    Ok(out)
}

/// Reads the valuation off a normalised cover: `x_j` is true iff `B₊(x_j)`
/// is the included block.
pub fn cover_to_valuation(cvg: &ClauseVariableGraph, cover: &VertexSet) -> Result<Valuation, ReductionError> {
    let gamma = cvg.params.gamma;
    let mut valuation = Valuation::all_false(cvg.formula.num_variables());
    for j in 1..=cvg.formula.num_variables() {
        let pos = block_state(cover, cvg.pos_block(j)).0;
        let neg = block_state(cover, cvg.neg_block(j)).0;
        match (pos, neg) {
            (p, 0) if p == gamma => valuation.set(j, true),
            (0, n) if n == gamma => valuation.set(j, false),
            _ => return Err(ReductionError::NotNormalized(j)),
        }
    }
    Ok(valuation)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf::max_sat_oracle;
    use crate::solvers::vertex_cover_exact;

    fn phi(n: usize, clauses: &[&[i64]]) -> CnfFormula {
        CnfFormula::from_signed(n, clauses).unwrap()
    }

    fn all_valuations(n: usize) -> impl Iterator<Item = Valuation> {
        (0u32..1 << n).map(move |bits| Valuation::new((0..n).map(|j| bits >> j & 1 == 1).collect()))
    }

    #[test]
    fn single_clause_layout() {
        let cvg = build_clause_variable_graph(&phi(2, &[&[1, 2]]), 1).unwrap();
        assert_eq!(cvg.graph.num_vertices(), 11);
        assert_eq!(cvg.tripartition.part_a.len(), 3);
        let labels: Vec<Vec<Literal>> = (1..=3).map(|mask| cvg.tuple_literals(0, mask)).collect();
        assert_eq!(
            labels,
            vec![
                vec![Literal::positive(1), Literal::negative(2)],
                vec![Literal::negative(1), Literal::positive(2)],
                vec![Literal::positive(1), Literal::positive(2)],
            ]
        );
        // a1(x1, ¬x2) sees exactly B₊(x1) ∪ B₋(x2)
        let a = cvg.a_vertex(0, 0b01);
        let expected: VertexSet = cvg.pos_block(1).chain(cvg.neg_block(2)).collect();
        assert_eq!(cvg.graph.neighbors(a).iter().collect::<VertexSet>(), expected);
        assert_eq!(expected.len(), 4);
        assert!(cvg.graph.verify_tripartition(&cvg.tripartition));
    }

    #[test]
    fn gamma_for_k3_p2() {
        let cvg = build_clause_variable_graph(&phi(3, &[&[1, -2, 3]]), 2).unwrap();
        assert_eq!(cvg.params.gamma, 8);
        assert_eq!(cvg.pos_block(3).len(), 8);
    }

    #[test]
    fn counts_match_closed_forms() {
        let f = phi(4, &[&[1, 2, -3], &[-1, 4, 2], &[3, -4, 1]]);
        for p in 1..3 {
            let cvg = build_clause_variable_graph(&f, p).unwrap();
            let gamma = 4 * p;
            assert_eq!(cvg.tripartition.part_a.len(), 7 * 3);
            assert_eq!(cvg.tripartition.part_b.len(), gamma * 4);
            assert_eq!(cvg.tripartition.part_c.len(), gamma * 4);
            assert_eq!(cvg.graph.num_edges(), 4 * gamma * gamma + 7 * 3 * 3 * gamma);
        }
    }

    #[test]
    fn blocks_are_twins() {
        let cvg = build_clause_variable_graph(&phi(3, &[&[1, 2], &[-1, 3], &[2, -3]]), 2).unwrap();
        let classes = cvg.graph.twin_classes();
        for j in 1..=3 {
            for block in [cvg.pos_block(j), cvg.neg_block(j)] {
                let block: VertexSet = block.collect();
                assert!(classes.iter().any(|c| block.is_subset(c)));
            }
        }
    }

    #[test]
    fn errors() {
        assert_eq!(build_clause_variable_graph(&phi(2, &[&[1, 2]]), 0), Err(ReductionError::InvalidP));
        assert_eq!(
            build_clause_variable_graph(&phi(2, &[&[1], &[2]]), 1),
            Err(ReductionError::WidthTooSmall(1))
        );
    }

    #[test]
    fn valuation_cover_example() {
        let cvg = build_clause_variable_graph(&phi(2, &[&[1, 2]]), 1).unwrap();
        let s = valuation_to_cover(&cvg, &Valuation::new(vec![true, true])).unwrap();
        assert_eq!(s.len(), 6);
        assert!(!s.contains(cvg.a_vertex(0, 0b11)));
        assert!(cvg.pos_block(1).chain(cvg.pos_block(2)).all(|v| s.contains(v)));
        assert!(cvg.graph.is_vertex_cover(&s));

        let s = valuation_to_cover(&cvg, &Valuation::new(vec![false, false])).unwrap();
        assert!(cvg.tripartition.part_a.is_subset(&s));
    }

    #[test]
    fn valuation_covers_are_covers_of_the_stated_size() {
        let f = phi(3, &[&[1, 2], &[-1, 3], &[2, -3], &[-2, -1]]);
        let cvg = build_clause_variable_graph(&f, 1).unwrap();
        for val in all_valuations(3) {
            let s = valuation_to_cover(&cvg, &val).unwrap();
            assert!(cvg.graph.is_vertex_cover(&s));
            assert_eq!(s.len(), 3 * 4 - f.count_satisfied(&val) + 2 * 3);
        }
    }

    #[test]
    fn normalization_exchanges_rare_literal() {
        // ¬x1 occurs once (≤ p = 1), x1 twice
        let f = phi(3, &[&[1, 2], &[1, 3], &[-1, -2]]);
        let cvg = build_clause_variable_graph(&f, 1).unwrap();
        let mut s = valuation_to_cover(&cvg, &Valuation::new(vec![true, true, true])).unwrap();
        s.extend(cvg.neg_block(1));
        let before = s.len();
        let normalized = normalize_cover(&cvg, &s).unwrap();
        assert!(cvg.neg_block(1).all(|v| !normalized.contains(v)));
        assert!(cvg.pos_block(1).all(|v| normalized.contains(v)));
        assert!(cvg.graph.is_vertex_cover(&normalized));
        assert!(normalized.len() <= before);
        assert!(cover_to_valuation(&cvg, &normalized).unwrap().value(1));
    }

    #[test]
    fn normalization_fixed_point_and_partial_blocks() {
        let f = phi(2, &[&[1, 2], &[-1, 2]]);
        let cvg = build_clause_variable_graph(&f, 1).unwrap();
        let s = valuation_to_cover(&cvg, &Valuation::new(vec![false, true])).unwrap();
        assert_eq!(normalize_cover(&cvg, &s).unwrap(), s);

        // add half of B₋(x2): the partial block is dropped again
        let mut t = s.clone();
        t.insert(cvg.neg_block(2).start);
        assert_eq!(normalize_cover(&cvg, &t).unwrap(), s);

        let mut broken = s.clone();
        broken.remove(cvg.pos_block(2).start);
        assert_eq!(normalize_cover(&cvg, &broken), Err(ReductionError::NotACover));
        assert_eq!(cover_to_valuation(&cvg, &t), Err(ReductionError::NotNormalized(2)));
    }

    #[test]
    fn minimum_cover_round_trip_reaches_optimum_on_small_formula() {
        let f = phi(2, &[&[1, 2], &[-1, 2]]);
        let cvg = build_clause_variable_graph(&f, 1).unwrap();
        let min = vertex_cover_exact(&cvg.graph).unwrap();
        // frozen from the exhaustive cover search in the oracle tests
        assert_eq!(min.size, 8);
        let normalized = normalize_cover(&cvg, &min.cover).unwrap();
        let val = cover_to_valuation(&cvg, &normalized).unwrap();
        assert_eq!(f.count_satisfied(&val), max_sat_oracle(&f).unwrap().m_star);
    }

    #[test]
    fn round_trip_never_loses_clauses() {
        let f = phi(3, &[&[1, 2], &[-1, 3], &[2, -3], &[-2, -1]]);
        let cvg = build_clause_variable_graph(&f, f.min_valid_p()).unwrap();
        for val in all_valuations(3) {
            let s = normalize_cover(&cvg, &valuation_to_cover(&cvg, &val).unwrap()).unwrap();
            let back = cover_to_valuation(&cvg, &s).unwrap();
            assert!(f.count_satisfied(&back) >= f.count_satisfied(&val));
        }
    }
}
