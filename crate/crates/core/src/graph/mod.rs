//! Simple undirected graphs with role-labelled vertices.
//!
//! Vertices are dense ids `0..n`. Adjacency is one bitset per vertex; labels
//! live in a side table and never influence the solvers.

mod bits;
mod generate;
mod pace;

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use bits::Bits;
pub use generate::{gen_random_graph, gen_random_tripartite, RandomTripartite};
pub use pace::{read_pace_gr, write_pace_gr};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range for a graph with {num_vertices} vertices")]
    VertexOutOfRange { vertex: usize, num_vertices: usize },
    #[error("line {line}: malformed header: {reason}")]
    MalformedHeader { line: usize, reason: String },
    #[error("line {line}: malformed line {text:?}")]
    MalformedLine { line: usize, text: String },
    #[error("header declares {declared} edges but {found} were read")]
    EdgeCountMismatch { declared: usize, found: usize },
    #[error("unknown vertex label {0:?}")]
    UnknownLabel(String),
}

/// Role of a vertex in the reduction pipeline. Indices are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum VertexLabel {
    /// `a_i(s_1..s_k)`; bit `t` of `mask` is set iff `s_t` is the clause's own literal.
    ClauseTuple { clause: usize, mask: u32 },
    PosBlock { variable: usize, t: usize },
    NegBlock { variable: usize, t: usize },
    CliqueA(usize),
    CliqueB(usize),
    CliqueC(usize),
    ApexA,
    ApexB,
    ApexC,
    #[default]
    Plain,
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            VertexLabel::ClauseTuple { clause, mask } => write!(f, "a:{clause}:{mask}"),
            VertexLabel::PosBlock { variable, t } => write!(f, "b+:{variable}:{t}"),
            VertexLabel::NegBlock { variable, t } => write!(f, "b-:{variable}:{t}"),
            VertexLabel::CliqueA(i) => write!(f, "KA:{i}"),
            VertexLabel::CliqueB(i) => write!(f, "KB:{i}"),
            VertexLabel::CliqueC(i) => write!(f, "KC:{i}"),
            VertexLabel::ApexA => f.write_str("zA"),
            VertexLabel::ApexB => f.write_str("zB"),
            VertexLabel::ApexC => f.write_str("zC"),
            VertexLabel::Plain => f.write_str("plain"),
        }
    }
}

impl FromStr for VertexLabel {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GraphError::UnknownLabel(s.to_string());
        let parts: Vec<&str> = s.split(':').collect();
        let num = |i: usize| parts.get(i).and_then(|p| p.parse::<usize>().ok()).ok_or_else(bad);
        let label = match (parts[0], parts.len()) {
            ("a", 3) => VertexLabel::ClauseTuple {
                clause: num(1)?,
                mask: parts[2].parse().map_err(|_| bad())?,
            },
            ("b+", 3) => VertexLabel::PosBlock { variable: num(1)?, t: num(2)? },
            ("b-", 3) => VertexLabel::NegBlock { variable: num(1)?, t: num(2)? },
            ("KA", 2) => VertexLabel::CliqueA(num(1)?),
            ("KB", 2) => VertexLabel::CliqueB(num(1)?),
            ("KC", 2) => VertexLabel::CliqueC(num(1)?),
            ("zA", 1) => VertexLabel::ApexA,
            ("zB", 1) => VertexLabel::ApexB,
            ("zC", 1) => VertexLabel::ApexC,
            ("plain", 1) => VertexLabel::Plain,
            _ => return Err(bad()),
        };
        Ok(label)
    }
}

/// A set of vertex ids, iterated in increasing order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(BTreeSet<usize>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(BTreeSet::new())
    }

    pub fn insert(&mut self, v: usize) -> bool {
        self.0.insert(v)
    }

    pub fn remove(&mut self, v: usize) -> bool {
        self.0.remove(&v)
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.contains(&v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn first(&self) -> Option<usize> {
        self.0.first().copied()
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.0.is_disjoint(&other.0)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn to_bits(&self, universe: usize) -> Bits {
        Bits::from_iter_in(universe, self.iter())
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet(iter.into_iter().collect())
    }
}

impl Extend<usize> for VertexSet {
    fn extend<I: IntoIterator<Item = usize>>(&mut self, iter: I) {
        self.0.extend(iter)
    }
}

impl<const N: usize> From<[usize; N]> for VertexSet {
    fn from(items: [usize; N]) -> Self {
        items.into_iter().collect()
    }
}

/// A split of the vertex set into three parts (`A`, `B`, `C`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tripartition {
    pub part_a: VertexSet,
    pub part_b: VertexSet,
    pub part_c: VertexSet,
}

impl Tripartition {
    pub fn new(part_a: VertexSet, part_b: VertexSet, part_c: VertexSet) -> Self {
        Tripartition { part_a, part_b, part_c }
    }

    pub fn parts(&self) -> [&VertexSet; 3] {
        [&self.part_a, &self.part_b, &self.part_c]
    }

    /// The gadget construction needs all three parts nonempty.
    pub fn has_empty_part(&self) -> bool {
        self.parts().iter().any(|p| p.is_empty())
    }
}

/// Simple undirected loopless graph with a label per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    adjacency: Vec<Bits>,
    labels: Vec<VertexLabel>,
    num_edges: usize,
}

impl LabeledGraph {
    pub fn new(num_vertices: usize) -> Self {
        LabeledGraph {
            adjacency: vec![Bits::new(num_vertices); num_vertices],
            labels: vec![VertexLabel::Plain; num_vertices],
            num_edges: 0,
        }
    }

    pub fn from_edges(num_vertices: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = LabeledGraph::new(num_vertices);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(q: usize) -> Self {
        let mut g = LabeledGraph::new(q);
        for u in 0..q {
            for v in u + 1..q {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = LabeledGraph::new(n);
        for v in 1..n {
            g.add_edge(v - 1, v).unwrap();
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = LabeledGraph::path(n);
        if n >= 3 {
            g.add_edge(n - 1, 0).unwrap();
        }
        g
    }

    /// Adds `uv`; adding an existing edge is a no-op.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        let n = self.num_vertices();
        for x in [u, v] {
            if x >= n {
                return Err(GraphError::VertexOutOfRange { vertex: x, num_vertices: n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if !self.adjacency[u].contains(v) {
            self.adjacency[u].insert(v);
            self.adjacency[v].insert(u);
            self.num_edges += 1;
        }
        Ok(())
    }

    pub fn num_vertices(&self) -> usize {
        self.adjacency.len()
    }

    pub fn num_edges(&self) -> usize {
        self.num_edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> &Bits {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn label(&self, v: usize) -> VertexLabel {
        self.labels[v]
    }

    pub fn labels(&self) -> &[VertexLabel] {
        &self.labels
    }

    pub fn set_label(&mut self, v: usize, label: VertexLabel) {
        self.labels[v] = label;
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, nb)| nb.iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn vertex_set(&self) -> VertexSet {
        (0..self.num_vertices()).collect()
    }

    pub fn is_edgeless(&self) -> bool {
        self.num_edges == 0
    }

    pub fn is_clique(&self, set: &VertexSet) -> bool {
        let members: Vec<usize> = set.iter().collect();
        members
            .iter()
            .enumerate()
            .all(|(i, &u)| members[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    /// Whether `G[set]` is connected (false for the empty set).
    pub fn is_connected_subset(&self, set: &VertexSet) -> bool {
        let Some(start) = set.first() else {
            return false;
        };
        let within = set.to_bits(self.num_vertices());
        self.reach(start, &within).len() == set.len()
    }

    /// Vertices reachable from `start` inside `within`.
    pub(crate) fn reach(&self, start: usize, within: &Bits) -> Bits {
        let mut seen = Bits::new(self.num_vertices());
        seen.insert(start);
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for w in self.adjacency[u].and(within).and_not(&seen).iter() {
                seen.insert(w);
                stack.push(w);
            }
        }
        seen
    }

    /// Components of `G[within]`, ordered by smallest member.
    pub(crate) fn components_within(&self, within: &Bits) -> Vec<Bits> {
        let mut left = within.clone();
        let mut out = Vec::new();
        while let Some(v) = left.first() {
            let comp = self.reach(v, within);
            left.difference_with(&comp);
            out.push(comp);
        }
        out
    }

    pub fn connected_components(&self) -> Vec<VertexSet> {
        let all = Bits::full(self.num_vertices());
        self.components_within(&all).iter().map(|c| c.iter().collect()).collect()
    }

    pub fn is_vertex_cover(&self, set: &VertexSet) -> bool {
        self.edges().all(|(u, v)| set.contains(u) || set.contains(v))
    }

    /// Classes of vertices with identical open neighbourhoods, ordered by
    /// smallest member. Singletons included.
    pub fn twin_classes(&self) -> Vec<VertexSet> {
        let mut index: HashMap<&Bits, usize> = HashMap::new();
        let mut classes: Vec<VertexSet> = Vec::new();
        for v in 0..self.num_vertices() {
            let slot = *index.entry(&self.adjacency[v]).or_insert_with(|| {
                classes.push(VertexSet::new());
                classes.len() - 1
            });
            classes[slot].insert(v);
        }
        classes
    }

    /// Checks that the parts are disjoint, cover `V`, and are independent.
    /// Empty parts are allowed here; see [`Tripartition::has_empty_part`].
    pub fn verify_tripartition(&self, tri: &Tripartition) -> bool {
        let n = self.num_vertices();
        let mut seen = Bits::new(n);
        for part in tri.parts() {
            for v in part.iter() {
                if v >= n || seen.contains(v) {
                    return false;
                }
                seen.insert(v);
            }
        }
        if seen.len() != n {
            return false;
        }
        tri.parts().iter().all(|part| {
            let bits = part.to_bits(n);
            part.iter().all(|v| !self.adjacency[v].intersects(&bits))
        })
    }

    /// `G − removed`, with vertex ids compacted; labels are kept.
    pub fn without(&self, removed: &VertexSet) -> (LabeledGraph, Vec<usize>) {
        let keep: Vec<usize> = (0..self.num_vertices()).filter(|v| !removed.contains(*v)).collect();
        let mut pos = vec![usize::MAX; self.num_vertices()];
        for (i, &v) in keep.iter().enumerate() {
            pos[v] = i;
        }
        let mut g = LabeledGraph::new(keep.len());
        for (u, v) in self.edges() {
            if pos[u] != usize::MAX && pos[v] != usize::MAX {
                g.add_edge(pos[u], pos[v]).unwrap();
            }
        }
        for (i, &v) in keep.iter().enumerate() {
            g.labels[i] = self.labels[v];
        }
        (g, keep)
    }
}
