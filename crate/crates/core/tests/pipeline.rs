#[path = "common/oracles.rs"]
mod oracles;

use proptest::prelude::*;
use tdred_core::cnf::{gen_random_kcnf, max_sat_oracle};
use tdred_core::reduction::{
    build_clause_variable_graph, build_h_phi, cover_to_elimination_forest, cover_to_valuation, normalize_cover,
    predicted_td, predicted_vc, valuation_to_cover,
};
use tdred_core::solvers::{validate_forest, vertex_cover_exact};
use tdred_core::{CnfFormula, Valuation, VertexSet};

fn signed(f: &CnfFormula) -> Vec<Vec<i64>> {
    f.clauses().iter().map(|c| c.iter().map(|l| l.to_dimacs()).collect()).collect()
}

fn valuations(n: usize) -> impl Iterator<Item = Valuation> {
    (0u32..1 << n).map(move |bits| Valuation::new((0..n).map(|j| bits >> j & 1 == 1).collect()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn valuation_covers_have_the_stated_size(n in 2usize..=4, m in 1usize..=4, k in 2usize..=3, seed: u64) {
        prop_assume!(k <= n);
        let f = gen_random_kcnf(n, m, k, m, seed).unwrap();
        let p = f.min_valid_p();
        let cvg = build_clause_variable_graph(&f, p).unwrap();
        let w = (1usize << k) - 1;
        for val in valuations(n) {
            let s = valuation_to_cover(&cvg, &val).unwrap();
            prop_assert!(cvg.graph.is_vertex_cover(&s));
            prop_assert_eq!(s.len(), w * m - f.count_satisfied(&val) + (1 << (k - 1)) * p * n);
        }
    }

    #[test]
    fn normalization_keeps_a_cover_with_one_block_per_variable(n in 2usize..=4, m in 1usize..=4, seed: u64) {
        let f = gen_random_kcnf(n, m, 2, m, seed).unwrap();
        let cvg = build_clause_variable_graph(&f, f.min_valid_p()).unwrap();
        let min = vertex_cover_exact(&cvg.graph).unwrap();
        let everything = cvg.graph.vertex_set();
        for s in [&min.cover, &everything] {
            let t = normalize_cover(&cvg, s).unwrap();
            prop_assert!(cvg.graph.is_vertex_cover(&t));
            let val = cover_to_valuation(&cvg, &t).unwrap();
            // every clause whose tuples are not all in the cover is satisfied
            let uncovered = (0..m).filter(|&i| cvg.clause_tuples(i).any(|a| !t.contains(a))).count();
            prop_assert!(f.count_satisfied(&val) >= uncovered);
        }
    }

    #[test]
    fn max_sat_agrees_with_clause_enumeration(n in 1usize..=10, m in 0usize..=10, k in 1usize..=3, seed: u64) {
        prop_assume!(k <= n && m * k <= n * m.max(1));
        let f = gen_random_kcnf(n, m, k, m.max(1), seed).unwrap();
        let best = max_sat_oracle(&f).unwrap();
        let clauses = signed(&f);
        prop_assert_eq!(best.m_star, oracles::brute_max_sat(n, &clauses));
        prop_assert_eq!(best.m_star == m, oracles::brute_satisfiable(n, &clauses));
        prop_assert_eq!(f.count_satisfied(&best.witness), best.m_star);
    }
}

/// `(x1 ∨ x3)(¬x3 ∨ ¬x1)(¬x2 ∨ ¬x3)` is satisfiable, so the closed form asks
/// for a cover of size 3·3 − 3 + 2·1·3 = 12, but `G(φ, 1)` has one of size 11.
/// Exchanging `B(¬x3)` for its clause-tuple neighbours also pulls in the
/// tuples of `(x1 ∨ x3)` that contain `¬x3`, so normalising the minimum
/// cover grows it.
#[test]
fn vertex_cover_formula_overestimates_when_opposite_literal_tuples_count() {
    let f = CnfFormula::from_signed(3, &[&[1, 3], &[-3, -1], &[-2, -3]]).unwrap();
    let cvg = build_clause_variable_graph(&f, f.min_valid_p()).unwrap();
    assert_eq!(cvg.params.p, 1);
    assert_eq!(max_sat_oracle(&f).unwrap().m_star, 3);
    assert_eq!(predicted_vc(&f, 1, 3), 12);

    let edges: Vec<_> = cvg.graph.edges().collect();
    assert_eq!(oracles::brute_vc(cvg.graph.num_vertices(), &edges), 11);
    let min = vertex_cover_exact(&cvg.graph).unwrap();
    assert_eq!(min.size, 11);
    assert!(normalize_cover(&cvg, &min.cover).unwrap().len() > 11);

    // the same cover yields an elimination forest of H(φ, 1) below the predicted treedepth
    let h = build_h_phi(&f, 1).unwrap();
    let forest = cover_to_elimination_forest(&h, &min.cover).unwrap();
    assert!(validate_forest(&h.graph, &forest).valid);
    assert_eq!(forest.depth().unwrap(), 11 + h.ell + 1);
    assert_eq!(predicted_td(&f, 1, 3), 12 + h.ell + 1);
}

#[test]
fn vertex_cover_formula_holds_on_small_three_cnf() {
    for seed in 0..40 {
        let m = 1 + seed as usize % 2;
        let f = gen_random_kcnf(3, m, 3, m, seed).unwrap();
        let cvg = build_clause_variable_graph(&f, 1).unwrap();
        let m_star = max_sat_oracle(&f).unwrap().m_star;
        assert_eq!(vertex_cover_exact(&cvg.graph).unwrap().size, predicted_vc(&f, 1, m_star), "seed {seed}");
    }
}

#[test]
fn witness_forest_depth_is_the_prediction() {
    for seed in 0..30 {
        let f = gen_random_kcnf(3, 3, 2, 3, seed).unwrap();
        let p = f.min_valid_p();
        let h = build_h_phi(&f, p).unwrap();
        let best = max_sat_oracle(&f).unwrap();
        let s = valuation_to_cover(h.clause_variable.as_ref().unwrap(), &best.witness).unwrap();
        let forest = cover_to_elimination_forest(&h, &s).unwrap();
        assert!(validate_forest(&h.graph, &forest).valid);
        assert_eq!(forest.depth().unwrap(), predicted_td(&f, p, best.m_star));
        let core_only: VertexSet = (0..h.num_core()).collect();
        assert!(validate_forest(&h.graph, &cover_to_elimination_forest(&h, &core_only).unwrap()).valid);
    }
}
