//! Cheap treedepth bounds shared by the branch-and-bound solver.

use super::EliminationForest;
use crate::graph::{Bits, LabeledGraph};

/// `⌈log₂(t + 1)⌉`, the treedepth of a path on `t` vertices and hence a
/// lower bound for any graph containing one.
pub(crate) fn log_bound(t: usize) -> usize {
    (usize::BITS - t.leading_zeros()) as usize
}

/// Vertex count of a path in `G[within]` grown greedily from a vertex of
/// minimum degree, always stepping to the neighbour with fewest unvisited
/// neighbours. Extended at both ends.
pub(crate) fn path_within(graph: &LabeledGraph, within: &Bits) -> usize {
    let Some(start) = within.iter().min_by_key(|&v| graph.neighbors(v).intersection_len(within)) else {
        return 0;
    };
    let mut free = within.clone();
    free.remove(start);
    let mut length = 1;
    for _ in 0..2 {
        let mut tip = start;
        loop {
            let next = graph
                .neighbors(tip)
                .and(&free)
                .iter()
                .min_by_key(|&u| graph.neighbors(u).intersection_len(&free));
            let Some(u) = next else { break };
            free.remove(u);
            length += 1;
            tip = u;
        }
    }
    length
}

/// Largest clique found by greedy extension from every vertex of `within`,
/// adding candidates in order of decreasing degree inside `within`.
pub(crate) fn clique_within(graph: &LabeledGraph, within: &Bits) -> usize {
    let mut order: Vec<(usize, usize)> =
        within.iter().map(|v| (graph.neighbors(v).intersection_len(within), v)).collect();
    order.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    let mut best = 0;
    for &(degree, v) in &order {
        if degree < best {
            break;
        }
        let mut candidates = graph.neighbors(v).and(within);
        let mut size = 1;
        for &(_, u) in &order {
            if size + candidates.len() <= best {
                break;
            }
            if candidates.contains(u) {
                size += 1;
                candidates.intersect_with(graph.neighbors(u));
            }
        }
        best = best.max(size);
    }
    best
}

/// Size of a greedily found clique: a treedepth lower bound.
pub fn greedy_clique_bound(graph: &LabeledGraph) -> usize {
    clique_within(graph, &Bits::full(graph.num_vertices()))
}

/// Elimination forest from repeatedly removing a vertex of maximum degree
/// in its component (smallest id on ties) and recursing on what remains.
pub fn heuristic_forest(graph: &LabeledGraph) -> EliminationForest {
    heuristic_within(graph, &Bits::full(graph.num_vertices()))
}

pub(crate) fn heuristic_within(graph: &LabeledGraph, within: &Bits) -> EliminationForest {
    let n = graph.num_vertices();
    let mut parent = vec![None; n];
    let mut stack: Vec<(Bits, Option<usize>)> =
        graph.components_within(within).into_iter().map(|c| (c, None)).collect();
    while let Some((comp, above)) = stack.pop() {
        let root = comp
            .iter()
            .max_by_key(|&v| (graph.neighbors(v).intersection_len(&comp), std::cmp::Reverse(v)))
            .expect("components are nonempty");
        parent[root] = above;
        let mut rest = comp;
        rest.remove(root);
        for c in graph.components_within(&rest) {
            stack.push((c, Some(root)));
        }
    }
    EliminationForest::new(parent)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solvers::validate_forest;

    #[test]
    fn log_bound_values() {
        assert_eq!(log_bound(0), 0);
        assert_eq!(log_bound(1), 1);
        assert_eq!(log_bound(3), 2);
        assert_eq!(log_bound(7), 3);
        assert_eq!(log_bound(8), 4);
    }

    #[test]
    fn path_found_in_path_graph() {
        let g = LabeledGraph::path(9);
        assert_eq!(path_within(&g, &Bits::full(9)), 9);
        // leaf, centre, leaf
        let star = LabeledGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(path_within(&star, &Bits::full(4)), 3);
    }

    #[test]
    fn clique_bound_finds_planted_clique() {
        let mut g = LabeledGraph::complete(5);
        let mut big = LabeledGraph::new(8);
        for (u, v) in g.edges().collect::<Vec<_>>() {
            big.add_edge(u + 3, v + 3).unwrap();
        }
        big.add_edge(0, 3).unwrap();
        big.add_edge(1, 2).unwrap();
        g = big;
        assert_eq!(greedy_clique_bound(&g), 5);
    }

    #[test]
    fn heuristic_is_valid() {
        for seed in 0..30 {
            let g = crate::graph::gen_random_graph(15, 0.3, seed);
            let f = heuristic_forest(&g);
            assert!(validate_forest(&g, &f).valid);
        }
    }
}
