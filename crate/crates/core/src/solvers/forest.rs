use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::SolverError;
use crate::graph::{LabeledGraph, VertexSet};

/// Rooted forest on `0..n` given by parent pointers (`None` = root).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EliminationForest {
    parent: Vec<Option<usize>>,
}

impl EliminationForest {
    pub fn new(parent: Vec<Option<usize>>) -> Self {
        EliminationForest { parent }
    }

    pub fn num_vertices(&self) -> usize {
        self.parent.len()
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn parents(&self) -> &[Option<usize>] {
        &self.parent
    }

    pub fn set_parent(&mut self, v: usize, parent: Option<usize>) {
        self.parent[v] = parent;
    }

    /// Depth of each vertex (roots have depth 1).
    pub fn depths(&self) -> Result<Vec<usize>, SolverError> {
        let n = self.parent.len();
        let mut depth = vec![0usize; n];
        let mut path = Vec::new();
        for start in 0..n {
            let mut v = start;
            path.clear();
            // climb until a vertex of known depth or past a root
            let base = loop {
                if depth[v] != 0 {
                    break depth[v];
                }
                path.push(v);
                if path.len() > n {
                    return Err(SolverError::Cycle(v));
                }
                match self.parent[v] {
                    None => break 0,
                    Some(p) if p >= n => return Err(SolverError::ParentOutOfRange { vertex: v, parent: p }),
                    Some(p) => v = p,
                }
            };
            for (i, &u) in path.iter().rev().enumerate() {
                depth[u] = base + i + 1;
            }
        }
        Ok(depth)
    }

    /// Number of vertices on a longest root-to-leaf path; 0 when empty.
    pub fn depth(&self) -> Result<usize, SolverError> {
        Ok(self.depths()?.into_iter().max().unwrap_or(0))
    }

    pub(crate) fn index(&self) -> Result<ForestIndex<'_>, SolverError> {
        Ok(ForestIndex { forest: self, depth: self.depths()? })
    }
}

/// Forest with precomputed depths for ancestor queries.
pub(crate) struct ForestIndex<'a> {
    forest: &'a EliminationForest,
    depth: Vec<usize>,
}

impl ForestIndex<'_> {
    /// Every vertex is its own ancestor.
    pub fn is_ancestor(&self, u: usize, v: usize) -> bool {
        if self.depth[u] > self.depth[v] {
            return false;
        }
        let mut w = v;
        for _ in 0..self.depth[v] - self.depth[u] {
            w = self.forest.parent[w].expect("depth bookkeeping");
        }
        w == u
    }

    pub fn related(&self, u: usize, v: usize) -> bool {
        self.is_ancestor(u, v) || self.is_ancestor(v, u)
    }
}

pub fn forest_depth(forest: &EliminationForest) -> Result<usize, SolverError> {
    forest.depth()
}

/// Outcome of [`validate_forest`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForestValidation {
    pub valid: bool,
    /// Graph edges whose endpoints are not in ancestor–descendant relation.
    pub violations: Vec<(usize, usize)>,
    /// Structural problem that prevents checking edges at all.
    pub defect: Option<String>,
}

pub fn validate_forest(graph: &LabeledGraph, forest: &EliminationForest) -> ForestValidation {
    let invalid = |defect: String| ForestValidation { valid: false, violations: Vec::new(), defect: Some(defect) };
    if forest.num_vertices() != graph.num_vertices() {
        return invalid(format!(
            "forest has {} vertices, graph has {}",
            forest.num_vertices(),
            graph.num_vertices()
        ));
    }
    let index = match forest.index() {
        Ok(index) => index,
        Err(e) => return invalid(e.to_string()),
    };
    let violations: Vec<(usize, usize)> = graph.edges().filter(|&(u, v)| !index.related(u, v)).collect();
    ForestValidation { valid: violations.is_empty(), violations, defect: None }
}

fn valid_index<'a>(graph: &LabeledGraph, forest: &'a EliminationForest) -> Result<ForestIndex<'a>, SolverError> {
    let report = validate_forest(graph, forest);
    if !report.valid {
        return Err(SolverError::InvalidForest(
            report.defect.unwrap_or_else(|| format!("uncovered edges {:?}", report.violations)),
        ));
    }
    forest.index()
}

/// For a clique `clique`, checks that all its vertices lie on one
/// root-to-leaf path of `forest`.
pub fn check_clique_path_property(
    graph: &LabeledGraph,
    forest: &EliminationForest,
    clique: &VertexSet,
) -> Result<bool, SolverError> {
    if clique.iter().any(|v| v >= graph.num_vertices()) || !graph.is_clique(clique) {
        return Err(SolverError::NotAClique);
    }
    let index = valid_index(graph, forest)?;
    let members: Vec<usize> = clique.iter().collect();
    Ok(members.iter().enumerate().all(|(i, &u)| members[i + 1..].iter().all(|&v| index.related(u, v))))
}

/// For a set inducing a connected subgraph, checks that one of its
/// vertices is an ancestor of all the others.
pub fn check_connected_ancestor_property(
    graph: &LabeledGraph,
    forest: &EliminationForest,
    set: &VertexSet,
) -> Result<bool, SolverError> {
    if set.is_empty() {
        return Err(SolverError::EmptySet);
    }
    if set.iter().any(|v| v >= graph.num_vertices()) || !graph.is_connected_subset(set) {
        return Err(SolverError::Disconnected);
    }
    let index = valid_index(graph, forest)?;
    Ok(set.iter().any(|top| set.iter().all(|v| index.is_ancestor(top, v))))
}

/// PACE `.tree` text: the depth, then each vertex's 1-based parent (0 for roots).
pub fn write_pace_tree(forest: &EliminationForest) -> Result<String, SolverError> {
    let mut out = String::new();
    writeln!(out, "{}", forest.depth()?).unwrap();
    for p in &forest.parent {
        writeln!(out, "{}", p.map_or(0, |p| p + 1)).unwrap();
    }
    Ok(out)
}

/// Parses `.tree` text; the declared depth must match the parent array.
pub fn read_pace_tree(text: &str) -> Result<EliminationForest, SolverError> {
    let mut numbers = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let value: usize = line
            .parse()
            .map_err(|_| SolverError::TreeFormat(format!("line {}: {line:?} is not a number", idx + 1)))?;
        numbers.push(value);
    }
    let Some((&declared, parents)) = numbers.split_first() else {
        return Err(SolverError::TreeFormat("empty tree file".into()));
    };
    let forest = EliminationForest::new(parents.iter().map(|&p| p.checked_sub(1)).collect());
    let depth = forest.depth()?;
    if depth != declared {
        return Err(SolverError::TreeFormat(format!("declared depth {declared}, parent array has depth {depth}")));
    }
    Ok(forest)
}
