use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{LabeledGraph, Tripartition, VertexSet};

/// Erdős–Rényi `G(n, p)`.
pub fn gen_random_graph(n: usize, edge_prob: f64, seed: u64) -> LabeledGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = LabeledGraph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(edge_prob) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandomTripartite {
    #[serde(skip)]
    pub graph: LabeledGraph,
    pub tripartition: Tripartition,
}

/// Random tripartite graph: parts get consecutive ids (`A`, then `B`, then
/// `C`) and every cross-part pair is an edge with probability `edge_prob`.
pub fn gen_random_tripartite(sizes: [usize; 3], edge_prob: f64, seed: u64) -> RandomTripartite {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n: usize = sizes.iter().sum();
    let mut part_of = Vec::with_capacity(n);
    for (p, &size) in sizes.iter().enumerate() {
        part_of.extend(std::iter::repeat_n(p, size));
    }
    let mut graph = LabeledGraph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if part_of[u] != part_of[v] && rng.gen_bool(edge_prob) {
                graph.add_edge(u, v).unwrap();
            }
        }
    }
    let part = |p: usize| -> VertexSet { (0..n).filter(|&v| part_of[v] == p).collect() };
    let tripartition = Tripartition::new(part(0), part(1), part(2));
    RandomTripartite { graph, tripartition }
}

impl Default for LabeledGraph {
    fn default() -> Self {
        LabeledGraph::new(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tripartite_is_valid_and_deterministic() {
        let a = gen_random_tripartite([3, 3, 3], 0.4, 9);
        let b = gen_random_tripartite([3, 3, 3], 0.4, 9);
        assert_eq!(a.graph, b.graph);
        assert!(a.graph.verify_tripartition(&a.tripartition));
        assert_eq!(a.tripartition.part_b, VertexSet::from([3, 4, 5]));
    }
}
