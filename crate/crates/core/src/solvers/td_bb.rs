//! Treedepth branch and bound without a vertex cap.
//!
//! States are vertex subsets inducing connected subgraphs (what remains of a
//! component after removing a prefix of the elimination order). Each state is
//! resolved against an exclusive depth limit; children are expanded in
//! best-first order of (memoised lower bound, size of the largest remaining
//! component, vertex id). Lower bounds are the greedy clique size and the treedepth of
//! a greedily found path. Every state expansion counts against the budget;
//! when it runs out the search stops and reports certified bounds.

use rustc_hash::FxHashMap;

use super::bounds::{clique_within, heuristic_within, log_bound, path_within};
use super::{validate_forest, EliminationForest, TdResult};
use crate::graph::{Bits, LabeledGraph};

pub const DEFAULT_BB_BUDGET: u64 = 1_000_000;

/// Memo entries beyond this count are not stored.
const MEMO_LIMIT: usize = 4_000_000;

#[derive(Debug, Clone, Default)]
pub struct BranchBoundOptions {
    /// Maximum number of state expansions.
    pub budget: u64,
    /// Depth believed achievable; the search first looks only below `hint + 1`.
    pub ub_hint: Option<usize>,
    /// Known elimination forest used as the starting upper bound if valid.
    pub initial: Option<EliminationForest>,
}

impl BranchBoundOptions {
    pub fn with_budget(budget: u64) -> Self {
        BranchBoundOptions { budget, ..Default::default() }
    }
}

pub fn treedepth_branch_bound(graph: &LabeledGraph, options: &BranchBoundOptions) -> TdResult {
    let n = graph.num_vertices();
    let all = Bits::full(n);
    let mut best = heuristic_within(graph, &all);
    let mut best_depth = best.depth().expect("heuristic forests are acyclic");
    if let Some(initial) = &options.initial {
        if validate_forest(graph, initial).valid {
            let d = initial.depth().expect("validated");
            if d < best_depth {
                best = initial.clone();
                best_depth = d;
            }
        }
    }

    let mut search = Search { graph, memo: FxHashMap::default(), budget: options.budget, expanded: 0, aborted: false };
    let mut lower = search.static_bound(&all);
    if lower >= best_depth {
        return TdResult { depth: best_depth, certificate: best, exact: true, lower_bound: best_depth };
    }

    let mut limits = Vec::new();
    if let Some(hint) = options.ub_hint {
        if hint + 1 < best_depth && hint + 1 > lower {
            limits.push(hint + 1);
        }
    }
    limits.push(best_depth);

    for limit in limits {
        let r = search.solve_set(&all, limit);
        if search.aborted {
            break;
        }
        if r < limit {
            let mut parent = vec![None; n];
            search.build(&all, r, None, &mut parent);
            let certificate = EliminationForest::new(parent);
            debug_assert_eq!(certificate.depth().ok(), Some(r));
            return TdResult { depth: r, certificate, exact: true, lower_bound: r };
        }
        lower = lower.max(limit);
    }
    if !search.aborted {
        // nothing below the starting upper bound
        return TdResult { depth: best_depth, certificate: best, exact: true, lower_bound: best_depth };
    }
    for c in graph.components_within(&all) {
        if let Some(e) = search.memo.get(&c) {
            lower = lower.max(e.value);
        }
    }
    TdResult { depth: best_depth, certificate: best, exact: false, lower_bound: lower.min(best_depth) }
}

#[derive(Clone, Copy)]
struct Entry {
    value: usize,
    exact: bool,
    root: usize,
}

struct Search<'g> {
    graph: &'g LabeledGraph,
    memo: FxHashMap<Bits, Entry>,
    budget: u64,
    expanded: u64,
    aborted: bool,
}

impl Search<'_> {
    /// Lower bound for a connected set.
    fn bound(&self, set: &Bits) -> usize {
        let memo = self.memo.get(set).map_or(0, |e| e.value);
        memo.max(clique_within(self.graph, set)).max(log_bound(path_within(self.graph, set)))
    }

    fn static_bound(&self, set: &Bits) -> usize {
        self.graph.components_within(set).iter().map(|c| self.bound(c)).max().unwrap_or(0)
    }

    fn remember(&mut self, set: Bits, entry: Entry) {
        if self.memo.len() < MEMO_LIMIT || self.memo.contains_key(&set) {
            self.memo.insert(set, entry);
        }
    }

    fn solve_set(&mut self, set: &Bits, limit: usize) -> usize {
        let mut comps = self.graph.components_within(set);
        comps.sort_by_key(|c| std::cmp::Reverse(c.len()));
        let mut worst = 0;
        for c in comps {
            let r = self.solve_connected(c, limit);
            if r >= limit || self.aborted {
                return r.max(worst);
            }
            worst = worst.max(r);
        }
        worst
    }

    fn solve_connected(&mut self, set: Bits, limit: usize) -> usize {
        let size = set.len();
        if size <= 2 {
            return size;
        }
        if let Some(e) = self.memo.get(&set) {
            if e.exact || e.value >= limit {
                return e.value;
            }
        }
        let lb = self.bound(&set);
        if lb == size {
            let root = set.first().unwrap();
            self.remember(set, Entry { value: size, exact: true, root });
            return size;
        }
        if lb >= limit {
            if !self.memo.contains_key(&set) {
                self.remember(set, Entry { value: lb, exact: false, root: usize::MAX });
            }
            return lb;
        }
        self.expanded += 1;
        if self.expanded > self.budget {
            self.aborted = true;
            return lb;
        }

        // Order children by what is already known about them; full bounds
        // are computed only when a child is actually explored.
        let mut children: Vec<(usize, usize, usize)> = set
            .iter()
            .map(|v| {
                let mut rest = set.clone();
                rest.remove(v);
                let comps = self.graph.components_within(&rest);
                let known = comps.iter().filter_map(|c| self.memo.get(c)).map(|e| e.value).max().unwrap_or(0);
                let largest = comps.iter().map(Bits::len).max().unwrap_or(0);
                (known, largest, v)
            })
            .collect();
        children.sort_unstable();

        let mut best = limit;
        let mut best_root = usize::MAX;
        for (child_lb, _, v) in children {
            if 1 + child_lb >= best {
                break;
            }
            let mut rest = set.clone();
            rest.remove(v);
            let r = 1 + self.solve_set(&rest, best - 1);
            if self.aborted {
                return lb;
            }
            if r < best {
                best = r;
                best_root = v;
                if best == lb {
                    break;
                }
            }
        }
        if best < limit {
            self.remember(set, Entry { value: best, exact: true, root: best_root });
            best
        } else {
            self.remember(set, Entry { value: lb.max(limit), exact: false, root: usize::MAX });
            lb.max(limit)
        }
    }

    fn build(&mut self, set: &Bits, depth: usize, above: Option<usize>, parent: &mut [Option<usize>]) {
        for c in self.graph.components_within(set) {
            let size = c.len();
            let d = if &c == set { depth } else { self.solve_connected(c.clone(), usize::MAX) };
            let root = if d == size {
                c.first().unwrap()
            } else {
                match self.memo.get(&c) {
                    Some(e) if e.exact => e.root,
                    _ => {
                        // evicted or never stored: resolve again without a budget
                        self.budget = u64::MAX;
                        self.memo.remove(&c);
                        self.solve_connected(c.clone(), usize::MAX);
                        self.memo[&c].root
                    }
                }
            };
            parent[root] = above;
            let mut rest = c;
            rest.remove(root);
            self.build(&rest, d - 1, Some(root), parent);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::gen_random_graph;
    use crate::solvers::treedepth_exact_dp;

    #[test]
    fn agrees_with_dp() {
        for seed in 0..60 {
            let n = (seed % 14) as usize + 1;
            let g = gen_random_graph(n, [0.2, 0.35, 0.6][(seed % 3) as usize], seed);
            let bb = treedepth_branch_bound(&g, &BranchBoundOptions::with_budget(u64::MAX));
            let dp = treedepth_exact_dp(&g).unwrap();
            assert!(bb.exact);
            assert_eq!(bb.depth, dp.depth, "seed {seed}");
            assert!(validate_forest(&g, &bb.certificate).valid);
            assert_eq!(bb.certificate.depth().unwrap(), bb.depth);
        }
    }

    #[test]
    fn clique_with_pendant_closes_immediately() {
        let mut g = LabeledGraph::new(11);
        for u in 0..10 {
            for v in u + 1..10 {
                g.add_edge(u, v).unwrap();
            }
        }
        g.add_edge(9, 10).unwrap();
        // removing the pendant's neighbour first leaves K9 and an isolated vertex
        assert_eq!(treedepth_exact_dp(&g).unwrap().depth, 10);
        let r = treedepth_branch_bound(&g, &BranchBoundOptions::with_budget(1));
        assert_eq!((r.depth, r.exact, r.lower_bound), (10, true, 10));
    }

    #[test]
    fn budget_exhaustion_reports_bounds() {
        let g = gen_random_graph(40, 0.3, 3);
        let r = treedepth_branch_bound(&g, &BranchBoundOptions::with_budget(5));
        assert!(!r.exact);
        assert!(r.lower_bound <= r.depth);
        assert!(validate_forest(&g, &r.certificate).valid);
        assert_eq!(r.certificate.depth().unwrap(), r.depth);
    }

    #[test]
    fn hint_and_initial_forest() {
        let g = LabeledGraph::path(15);
        let chain = EliminationForest::new((0..15).map(|v: usize| v.checked_sub(1)).collect());
        let opts = BranchBoundOptions { budget: u64::MAX, ub_hint: Some(4), initial: Some(chain) };
        let r = treedepth_branch_bound(&g, &opts);
        assert_eq!((r.depth, r.exact), (4, true));
        // hint below the optimum still ends with the exact value
        let opts = BranchBoundOptions { budget: u64::MAX, ub_hint: Some(2), initial: None };
        assert_eq!(treedepth_branch_bound(&g, &opts).depth, 4);
    }

    #[test]
    fn empty_graph() {
        let r = treedepth_branch_bound(&LabeledGraph::new(0), &BranchBoundOptions::default());
        assert_eq!((r.depth, r.exact), (0, true));
    }
}
