use std::ops::Range;

use super::{build_clause_variable_graph, gadget_ell, ClauseVariableGraph, ReductionError};
use crate::cnf::CnfFormula;
use crate::graph::{LabeledGraph, Tripartition, VertexLabel, VertexSet};
use crate::solvers::EliminationForest;

/// A tripartite graph extended by three `ℓ`-cliques and three apex vertices.
///
/// Core vertices keep their ids; then come `K_A`, `z_A`, `K_B`, `z_B`,
/// `K_C`, `z_C`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetGraph {
    pub graph: LabeledGraph,
    pub core: LabeledGraph,
    pub tripartition: Tripartition,
    pub ell: usize,
    /// Set when built from a formula.
    pub clause_variable: Option<ClauseVariableGraph>,
}

impl GadgetGraph {
    pub fn num_core(&self) -> usize {
        self.core.num_vertices()
    }

    /// `K_X` for part index 0, 1, 2 (`A`, `B`, `C`).
    pub fn clique(&self, part: usize) -> Range<usize> {
        let start = self.num_core() + part * (self.ell + 1);
        start..start + self.ell
    }

    pub fn apex(&self, part: usize) -> usize {
        self.num_core() + part * (self.ell + 1) + self.ell
    }
}

pub fn build_gadget(core: &LabeledGraph, tripartition: &Tripartition, ell: usize) -> Result<GadgetGraph, ReductionError> {
    if ell == 0 {
        return Err(ReductionError::InvalidEll);
    }
    for (name, part) in ['A', 'B', 'C'].into_iter().zip(tripartition.parts()) {
        if part.is_empty() {
            return Err(ReductionError::EmptyPart(name));
        }
    }
    if !core.verify_tripartition(tripartition) {
        return Err(ReductionError::InvalidTripartition);
    }

    let n = core.num_vertices();
    let mut graph = LabeledGraph::new(n + 3 * (ell + 1));
    for v in 0..n {
        graph.set_label(v, core.label(v));
    }
    for (u, v) in core.edges() {
        graph.add_edge(u, v)?;
    }
    let mut gadget = GadgetGraph { graph, core: core.clone(), tripartition: tripartition.clone(), ell, clause_variable: None };
    for (x, part) in tripartition.parts().into_iter().enumerate() {
        let clique = gadget.clique(x);
        let apex = gadget.apex(x);
        for (idx, q) in clique.clone().enumerate() {
            let label = match x {
                0 => VertexLabel::CliqueA(idx + 1),
                1 => VertexLabel::CliqueB(idx + 1),
                _ => VertexLabel::CliqueC(idx + 1),
            };
            gadget.graph.set_label(q, label);
            for r in q + 1..clique.end {
                gadget.graph.add_edge(q, r)?;
            }
            for v in part.iter() {
                gadget.graph.add_edge(q, v)?;
            }
            gadget.graph.add_edge(q, apex)?;
        }
        let label = [VertexLabel::ApexA, VertexLabel::ApexB, VertexLabel::ApexC][x];
        gadget.graph.set_label(apex, label);
    }
    Ok(gadget)
}

/// `H(φ, p)`: the gadget over `G(φ, p)` with `ℓ = |A ∪ B₊|`.
pub fn build_h_phi(formula: &CnfFormula, p: usize) -> Result<GadgetGraph, ReductionError> {
    let cvg = build_clause_variable_graph(formula, p)?;
    let mut gadget = build_gadget(&cvg.graph, &cvg.tripartition, gadget_ell(formula, p))?;
    gadget.clause_variable = Some(cvg);
    Ok(gadget)
}

/// Elimination forest of depth `|S| + ℓ + 1` from a vertex cover `S` of
/// the core: `S` as a path on top (ascending ids), then for each part `X`
/// the clique `K_X` as a path with `z_X` and `X \ S` as leaves below it.
pub fn cover_to_elimination_forest(gadget: &GadgetGraph, cover: &VertexSet) -> Result<EliminationForest, ReductionError> {
    if cover.iter().any(|v| v >= gadget.num_core()) || !gadget.core.is_vertex_cover(cover) {
        return Err(ReductionError::NotACover);
    }
    let mut parent = vec![None; gadget.graph.num_vertices()];
    let mut above = None;
    for v in cover.iter() {
        parent[v] = above;
        above = Some(v);
    }
    for (x, part) in gadget.tripartition.parts().into_iter().enumerate() {
        let mut tip = above;
        for q in gadget.clique(x) {
            parent[q] = tip;
            tip = Some(q);
        }
        parent[gadget.apex(x)] = tip;
        for v in part.iter().filter(|&v| !cover.contains(v)) {
            parent[v] = tip;
        }
    }
    Ok(EliminationForest::new(parent))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf::max_sat_oracle;
    use crate::reduction::{predicted_td, valuation_to_cover};
    use crate::solvers::{treedepth_exact_dp, validate_forest};

    fn path_across_parts() -> (LabeledGraph, Tripartition) {
        let g = LabeledGraph::path(3);
        let tri = Tripartition::new(VertexSet::from([0]), VertexSet::from([1]), VertexSet::from([2]));
        (g, tri)
    }

    #[test]
    fn small_gadget_counts_and_depth() {
        let (g, tri) = path_across_parts();
        let h = build_gadget(&g, &tri, 1).unwrap();
        assert_eq!(h.graph.num_vertices(), 9);
        assert_eq!(h.graph.num_edges(), 8);
        // frozen from the subset DP; vc = 1, ℓ = 1
        assert_eq!(treedepth_exact_dp(&h.graph).unwrap().depth, 3);
    }

    #[test]
    fn layout_and_adjacency() {
        let (g, tri) = path_across_parts();
        let h = build_gadget(&g, &tri, 3).unwrap();
        assert_eq!(h.clique(0), 3..6);
        assert_eq!(h.apex(0), 6);
        assert_eq!(h.clique(2), 11..14);
        assert_eq!(h.apex(2), 14);
        for x in 0..3 {
            let k: VertexSet = h.clique(x).collect();
            assert!(h.graph.is_clique(&k));
            let mut expected: VertexSet = tri.parts()[x].clone();
            expected.insert(h.apex(x));
            assert_eq!(h.graph.neighbors(h.apex(x)).iter().collect::<VertexSet>(), k);
            for q in h.clique(x) {
                let outside: VertexSet = h.graph.neighbors(q).iter().filter(|v| !k.contains(*v)).collect();
                assert_eq!(outside, expected);
            }
        }
        assert_eq!(h.graph.label(h.apex(1)), VertexLabel::ApexB);
        assert_eq!(h.graph.label(h.clique(2).start), VertexLabel::CliqueC(1));
    }

    #[test]
    fn errors() {
        let (g, tri) = path_across_parts();
        assert_eq!(build_gadget(&g, &tri, 0), Err(ReductionError::InvalidEll));
        let empty = Tripartition::new(VertexSet::from([0, 2]), VertexSet::from([1]), VertexSet::new());
        assert_eq!(build_gadget(&g, &empty, 1), Err(ReductionError::EmptyPart('C')));
        let bad = Tripartition::new(VertexSet::from([0, 1]), VertexSet::new(), VertexSet::from([2]));
        assert_eq!(build_gadget(&g, &bad, 1), Err(ReductionError::EmptyPart('B')));
        let bad = Tripartition::new(VertexSet::from([0, 1]), VertexSet::from([1]), VertexSet::from([2]));
        assert_eq!(build_gadget(&g, &bad, 1), Err(ReductionError::InvalidTripartition));
    }

    #[test]
    fn h_phi_sizes() {
        let f = CnfFormula::from_signed(2, &[&[1, 2]]).unwrap();
        let h = build_h_phi(&f, 1).unwrap();
        // ℓ = 3·1 + 2·1·2
        assert_eq!(h.ell, 7);
        assert_eq!(h.graph.num_vertices(), 11 + 3 * 7 + 3);
        let f = CnfFormula::from_signed(2, &[&[1, 2], &[-1, 2]]).unwrap();
        let h = build_h_phi(&f, 1).unwrap();
        assert_eq!(h.ell, 10);
        assert_eq!(h.graph.num_vertices(), 14 + 3 * 10 + 3);
        assert!(h.graph.labels().iter().all(|l| *l != VertexLabel::Plain));
    }

    #[test]
    fn witness_certificate_matches_prediction() {
        let f = CnfFormula::from_signed(2, &[&[1, 2], &[-1, 2], &[-1, -2]]).unwrap();
        let h = build_h_phi(&f, 1).unwrap();
        let best = max_sat_oracle(&f).unwrap();
        let cover = valuation_to_cover(h.clause_variable.as_ref().unwrap(), &best.witness).unwrap();
        let forest = cover_to_elimination_forest(&h, &cover).unwrap();
        assert!(validate_forest(&h.graph, &forest).valid);
        assert_eq!(forest.depth().unwrap(), predicted_td(&f, 1, best.m_star));
    }

    #[test]
    fn degenerate_covers() {
        let (g, tri) = path_across_parts();
        let h = build_gadget(&g, &tri, 2).unwrap();
        let forest = cover_to_elimination_forest(&h, &g.vertex_set()).unwrap();
        assert!(validate_forest(&h.graph, &forest).valid);
        assert_eq!(forest.depth().unwrap(), 3 + 2 + 1);
        assert_eq!(cover_to_elimination_forest(&h, &VertexSet::from([0])), Err(ReductionError::NotACover));
    }
}
