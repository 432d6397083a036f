//! Exact treedepth by memoised recursion over vertex subsets.
//!
//! `td(∅) = 0`, a disconnected subset takes the maximum over its
//! components, and a connected subset takes `1 + min_v td(S − v)`. Only
//! connected subsets reached by the recursion are memoised, keyed by their
//! bitmask. Queries carry an exclusive upper limit so that branches which
//! cannot beat the incumbent are cut early; the memo records either an exact
//! value or a proven lower bound.

use rustc_hash::FxHashMap;

use super::{EliminationForest, SolverError, TdResult};
use crate::graph::LabeledGraph;

pub const DEFAULT_DP_CAP: usize = 24;

pub fn treedepth_exact_dp(graph: &LabeledGraph) -> Result<TdResult, SolverError> {
    treedepth_exact_dp_with_cap(graph, DEFAULT_DP_CAP)
}

pub fn treedepth_exact_dp_with_cap(graph: &LabeledGraph, cap: usize) -> Result<TdResult, SolverError> {
    let n = graph.num_vertices();
    if n > cap.min(32) {
        return Err(SolverError::CapExceeded {
            solver: "subset-DP",
            num_vertices: n,
            cap: cap.min(32),
            hint: "; use the branch-and-bound solver",
        });
    }
    let adj: Vec<u32> = (0..n).map(|v| graph.neighbors(v).iter().fold(0u32, |m, u| m | 1 << u)).collect();
    let mut dp = SubsetDp { adj, memo: FxHashMap::default() };
    let all = if n == 0 { 0 } else { u32::MAX >> (32 - n) };
    let depth = dp.solve_set(all, u32::MAX);
    let mut parent = vec![None; n];
    dp.build(all, depth, None, &mut parent);
    let certificate = EliminationForest::new(parent);
    debug_assert_eq!(certificate.depth().ok(), Some(depth as usize));
    Ok(TdResult { depth: depth as usize, certificate, exact: true, lower_bound: depth as usize })
}

#[derive(Clone, Copy)]
struct Entry {
    /// Exact value when `exact`, otherwise a proven lower bound.
    value: u32,
    exact: bool,
}

struct SubsetDp {
    adj: Vec<u32>,
    memo: FxHashMap<u32, Entry>,
}

fn bits(mut set: u32) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if set == 0 {
            return None;
        }
        let v = set.trailing_zeros() as usize;
        set &= set - 1;
        Some(v)
    })
}

impl SubsetDp {
    fn component(&self, start: usize, within: u32) -> u32 {
        let mut comp = 1u32 << start;
        let mut frontier = comp;
        while frontier != 0 {
            let mut next = 0;
            for v in bits(frontier) {
                next |= self.adj[v];
            }
            next &= within & !comp;
            comp |= next;
            frontier = next;
        }
        comp
    }

    fn components(&self, within: u32) -> Vec<u32> {
        let mut left = within;
        let mut out = Vec::new();
        while left != 0 {
            let c = self.component(left.trailing_zeros() as usize, within);
            left &= !c;
            out.push(c);
        }
        out
    }

    fn lower_bound(&self, set: u32) -> u32 {
        let mut clique = 0;
        for v in bits(set) {
            let mut cand = self.adj[v] & set;
            let mut size = 1;
            while cand != 0 {
                let u = cand.trailing_zeros() as usize;
                size += 1;
                cand &= self.adj[u];
            }
            clique = clique.max(size);
        }
        // greedy path from the lowest vertex, extended at both ends
        let start = set.trailing_zeros() as usize;
        let mut free = set & !(1 << start);
        let mut len = 1u32;
        for _ in 0..2 {
            let mut tip = start;
            loop {
                let cand = self.adj[tip] & free;
                if cand == 0 {
                    break;
                }
                let u = bits(cand).min_by_key(|&u| (self.adj[u] & free).count_ones()).unwrap();
                free &= !(1 << u);
                len += 1;
                tip = u;
            }
        }
        clique.max(32 - len.leading_zeros())
    }

    /// `td(G[set])` if it is below `limit`, otherwise some value `≥ limit`
    /// that is a valid lower bound.
    fn solve_set(&mut self, set: u32, limit: u32) -> u32 {
        let mut comps = self.components(set);
        comps.sort_by_key(|c| std::cmp::Reverse(c.count_ones()));
        let mut worst = 0;
        for c in comps {
            let r = self.solve_connected(c, limit);
            if r >= limit {
                return r;
            }
            worst = worst.max(r);
        }
        worst
    }

    fn solve_connected(&mut self, set: u32, limit: u32) -> u32 {
        let size = set.count_ones();
        if size <= 2 {
            return size;
        }
        let mut lb = 0;
        if let Some(e) = self.memo.get(&set) {
            if e.exact {
                return e.value;
            }
            lb = e.value;
        }
        let clique_or_path = self.lower_bound(set);
        if clique_or_path == size {
            self.memo.insert(set, Entry { value: size, exact: true });
            return size;
        }
        lb = lb.max(clique_or_path);
        if lb >= limit {
            return lb;
        }

        let mut order: Vec<usize> = bits(set).collect();
        order.sort_by_key(|&v| std::cmp::Reverse((self.adj[v] & set).count_ones()));
        let mut best = limit;
        for v in order {
            let r = 1 + self.solve_set(set & !(1 << v), best - 1);
            if r < best {
                best = r;
                if best == lb {
                    break;
                }
            }
        }
        let entry = if best < limit {
            Entry { value: best, exact: true }
        } else {
            Entry { value: lb.max(limit), exact: false }
        };
        self.memo.insert(set, entry);
        entry.value
    }

    /// Writes an optimal forest for `set` into `parent`, hanging its roots
    /// under `above`. At every connected subset the root is the smallest
    /// vertex whose removal attains the optimum.
    fn build(&mut self, set: u32, depth: u32, above: Option<usize>, parent: &mut [Option<usize>]) {
        for c in self.components(set) {
            let d = if c == set { depth } else { self.solve_connected(c, u32::MAX) };
            let root = if d == c.count_ones() {
                // a clique (or a tiny set): any vertex works
                c.trailing_zeros() as usize
            } else {
                bits(c)
                    .find(|&v| self.solve_set(c & !(1 << v), d) < d)
                    .expect("optimal value is attained by some vertex")
            };
            parent[root] = above;
            self.build(c & !(1 << root), d - 1, Some(root), parent);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::gen_random_graph;
    use crate::solvers::validate_forest;

    fn direct(g: &LabeledGraph) -> usize {
        crate::oracles::direct_td(g.num_vertices(), &g.edges().collect::<Vec<_>>())
    }

    #[test]
    fn cliques() {
        for q in 0..=8 {
            assert_eq!(treedepth_exact_dp(&LabeledGraph::complete(q)).unwrap().depth, q);
        }
    }

    #[test]
    fn paths_against_direct_recursion() {
        // frozen from `direct_td`
        assert_eq!(direct(&LabeledGraph::path(4)), 3);
        assert_eq!(treedepth_exact_dp(&LabeledGraph::path(4)).unwrap().depth, 3);
        assert_eq!(treedepth_exact_dp(&LabeledGraph::path(7)).unwrap().depth, 3);
        assert_eq!(treedepth_exact_dp(&LabeledGraph::path(8)).unwrap().depth, 4);
    }

    #[test]
    fn matches_direct_recursion_on_random_graphs() {
        for seed in 0..80 {
            let n = (seed % 10) as usize + 1;
            let g = gen_random_graph(n, 0.45, seed);
            let r = treedepth_exact_dp(&g).unwrap();
            assert_eq!(r.depth, direct(&g), "seed {seed}");
            assert!(validate_forest(&g, &r.certificate).valid);
            assert_eq!(r.certificate.depth().unwrap(), r.depth);
        }
    }

    #[test]
    fn certificate_prefers_small_ids() {
        // path 0-1-2: vertex 1 is the only optimal root
        let r = treedepth_exact_dp(&LabeledGraph::path(3)).unwrap();
        assert_eq!(r.certificate.parents(), &[Some(1), None, Some(1)]);
        // C4: every vertex is an optimal root, so 0 is chosen
        let r = treedepth_exact_dp(&LabeledGraph::cycle(4)).unwrap();
        assert_eq!(r.depth, 3);
        assert_eq!(r.certificate.parent(0), None);
    }

    #[test]
    fn cap_enforced() {
        let g = LabeledGraph::new(30);
        assert!(matches!(treedepth_exact_dp(&g), Err(SolverError::CapExceeded { .. })));
        assert!(treedepth_exact_dp_with_cap(&LabeledGraph::path(5), 4).is_err());
    }

    #[test]
    fn empty_and_edgeless() {
        assert_eq!(treedepth_exact_dp(&LabeledGraph::new(0)).unwrap().depth, 0);
        assert_eq!(treedepth_exact_dp(&LabeledGraph::new(5)).unwrap().depth, 1);
    }
}
