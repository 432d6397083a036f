//! Minimum vertex cover by branch and bound on the twin quotient.
//!
//! Every inclusion-minimal cover takes a twin class entirely or not at all,
//! so classes are contracted into weighted vertices before the search and
//! expanded afterwards. The search branches on a vertex of maximum degree
//! (take it, or take its whole neighbourhood) and prunes with a greedy
//! matching bound.

use serde::{Deserialize, Serialize};

use super::SolverError;
use crate::graph::{Bits, LabeledGraph, VertexSet};

pub const DEFAULT_VC_CAP: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexCover {
    pub size: usize,
    pub cover: VertexSet,
}

pub fn vertex_cover_exact(graph: &LabeledGraph) -> Result<VertexCover, SolverError> {
    vertex_cover_exact_with_cap(graph, DEFAULT_VC_CAP)
}

/// Minimum vertex cover; among minimum covers, the lexicographically
/// smallest sorted vertex list. `cap` bounds the number of twin classes.
pub fn vertex_cover_exact_with_cap(graph: &LabeledGraph, cap: usize) -> Result<VertexCover, SolverError> {
    let classes = graph.twin_classes();
    if classes.len() > cap {
        return Err(SolverError::CapExceeded {
            solver: "vertex-cover",
            num_vertices: classes.len(),
            cap,
            hint: " (counted as twin classes)",
        });
    }
    let quotient = Quotient::new(graph, &classes);
    let all = Bits::full(quotient.len());
    let optimum = quotient.min_cover(&all, usize::MAX).expect("unbounded search always succeeds");

    // Fix classes in order of their smallest member, preferring inclusion.
    let mut taken = Bits::new(quotient.len());
    let mut open = all;
    let mut spent = 0;
    for c in 0..quotient.len() {
        if !open.contains(c) {
            continue;
        }
        let mut rest = open.clone();
        rest.remove(c);
        let with = spent + quotient.weight[c];
        if quotient.min_cover(&rest, optimum - with.min(optimum)).is_some_and(|w| with + w <= optimum) {
            taken.insert(c);
            spent = with;
        } else {
            let forced = quotient.adj[c].and(&open);
            spent += forced.iter().map(|u| quotient.weight[u]).sum::<usize>();
            taken.union_with(&forced);
            rest.difference_with(&forced);
        }
        open = rest;
    }
    debug_assert_eq!(spent, optimum);

    let cover: VertexSet = taken.iter().flat_map(|c| classes[c].iter()).collect();
    debug_assert!(graph.is_vertex_cover(&cover));
    Ok(VertexCover { size: cover.len(), cover })
}

struct Quotient {
    adj: Vec<Bits>,
    weight: Vec<usize>,
}

impl Quotient {
    fn new(graph: &LabeledGraph, classes: &[VertexSet]) -> Self {
        let c = classes.len();
        let mut class_of = vec![0; graph.num_vertices()];
        for (i, class) in classes.iter().enumerate() {
            for v in class.iter() {
                class_of[v] = i;
            }
        }
        let adj = classes
            .iter()
            .map(|class| {
                let rep = class.first().expect("classes are nonempty");
                Bits::from_iter_in(c, graph.neighbors(rep).iter().map(|u| class_of[u]))
            })
            .collect();
        Quotient { adj, weight: classes.iter().map(VertexSet::len).collect() }
    }

    fn len(&self) -> usize {
        self.weight.len()
    }

    /// Minimum cover weight of the graph induced by `active`, if it is at
    /// most `budget`.
    fn min_cover(&self, active: &Bits, budget: usize) -> Option<usize> {
        let mut best = budget.saturating_add(1);
        self.search(active.clone(), 0, &mut best);
        (best <= budget).then_some(best)
    }

    fn matching_bound(&self, active: &Bits) -> usize {
        let mut free = active.clone();
        let mut bound = 0;
        for u in active.iter() {
            if !free.contains(u) {
                continue;
            }
            if let Some(v) = self.adj[u].and(&free).iter().next() {
                free.remove(u);
                free.remove(v);
                bound += self.weight[u].min(self.weight[v]);
            }
        }
        bound
    }

    fn search(&self, mut active: Bits, cost: usize, best: &mut usize) {
        // isolated vertices never need to be covered
        let mut pick: Option<(usize, usize)> = None;
        for v in active.clone().iter() {
            let d = self.adj[v].intersection_len(&active);
            if d == 0 {
                active.remove(v);
            } else if pick.is_none_or(|(_, pd)| d > pd) {
                pick = Some((v, d));
            }
        }
        let Some((v, _)) = pick else {
            *best = (*best).min(cost);
            return;
        };
        if cost + self.matching_bound(&active) >= *best {
            return;
        }

        let mut without_v = active.clone();
        without_v.remove(v);
        self.search(without_v.clone(), cost + self.weight[v], best);

        let neighbourhood = self.adj[v].and(&active);
        let extra: usize = neighbourhood.iter().map(|u| self.weight[u]).sum();
        if cost + extra < *best {
            without_v.difference_with(&neighbourhood);
            self.search(without_v, cost + extra, best);
        }
    }
}
