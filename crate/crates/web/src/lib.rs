//! Browser bindings. Each export takes plain strings and numbers and returns
//! a JSON string; the same functions are callable from native Rust.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use tdred_core::cnf::{max_sat_oracle, parse_dimacs};
use tdred_core::graph::{gen_random_tripartite, read_pace_gr, write_pace_gr};
use tdred_core::reduction::{build_gadget, build_h_phi, check_occurrences, cover_to_elimination_forest, InstanceSidecar};
use tdred_core::solvers::{
    treedepth_branch_bound, treedepth_exact_dp, validate_forest, vertex_cover_exact, BranchBoundOptions, DEFAULT_DP_CAP,
};
use tdred_core::{EliminationForest, LabeledGraph};

#[derive(Serialize)]
struct Reduced {
    sidecar: InstanceSidecar,
    /// Minimum vertex cover of `G(φ, p)` when the solver cap allows it.
    vc: Option<usize>,
    gr: String,
}

#[derive(Serialize)]
struct Solved {
    num_vertices: usize,
    num_edges: usize,
    depth: usize,
    exact: bool,
    lower_bound: usize,
    /// 1-based parent per vertex, 0 for roots.
    parents: Vec<usize>,
}

#[derive(Serialize)]
struct GadgetDemo {
    parts: [Vec<usize>; 3],
    edges: Vec<(usize, usize)>,
    vc: usize,
    cover: Vec<usize>,
    ell: usize,
    num_vertices: usize,
    predicted_td: usize,
    certificate_depth: usize,
    certificate_valid: bool,
    td: usize,
    td_exact: bool,
}

fn parents(forest: &EliminationForest) -> Vec<usize> {
    forest.parents().iter().map(|p| p.map_or(0, |v| v + 1)).collect()
}

fn to_json(value: &impl Serialize) -> String {
    serde_json::to_string(value).expect("plain data serializes")
}

/// DIMACS CNF to `H(φ, p)`; `p = 0` picks the smallest valid value.
pub fn reduce_formula(dimacs: &str, p: usize) -> Result<String, String> {
    let formula = parse_dimacs(dimacs).map_err(|e| e.to_string())?;
    let p = if p == 0 { formula.min_valid_p() } else { p };
    check_occurrences(&formula, p).map_err(|e| e.to_string())?;
    let h = build_h_phi(&formula, p).map_err(|e| e.to_string())?;
    let m_star = max_sat_oracle(&formula).ok().map(|r| r.m_star);
    let g = &h.clause_variable.as_ref().expect("built from a formula").graph;
    Ok(to_json(&Reduced {
        sidecar: InstanceSidecar::for_h_phi(&h, m_star).expect("built from a formula"),
        vc: vertex_cover_exact(g).ok().map(|c| c.size),
        gr: write_pace_gr(&h.graph),
    }))
}

/// Treedepth of a PACE .gr graph: the exact DP when small, otherwise
/// branch and bound with `budget` expansions.
pub fn solve_treedepth(gr: &str, budget: u64) -> Result<String, String> {
    let graph = read_pace_gr(gr).map_err(|e| e.to_string())?;
    let result = if graph.num_vertices() <= DEFAULT_DP_CAP.min(16) {
        treedepth_exact_dp(&graph).map_err(|e| e.to_string())?
    } else {
        treedepth_branch_bound(&graph, &BranchBoundOptions::with_budget(budget))
    };
    Ok(to_json(&Solved {
        num_vertices: graph.num_vertices(),
        num_edges: graph.num_edges(),
        depth: result.depth,
        exact: result.exact,
        lower_bound: result.lower_bound,
        parents: parents(&result.certificate),
    }))
}

/// Random tripartite graph with the clique gadget attached: compares the
/// cover-based forest depth `vc + ℓ + 1` with the solved treedepth.
pub fn gadget_demo(sizes: [usize; 3], edge_prob: f64, seed: u64, ell: usize, budget: u64) -> Result<String, String> {
    if sizes.iter().any(|&s| s > 3) || ell > 4 {
        return Err("parts hold at most 3 vertices and ℓ is at most 4".into());
    }
    let t = gen_random_tripartite(sizes, edge_prob.clamp(0.0, 1.0), seed);
    let vc = vertex_cover_exact(&t.graph).map_err(|e| e.to_string())?;
    let h = build_gadget(&t.graph, &t.tripartition, ell).map_err(|e| e.to_string())?;
    let forest = cover_to_elimination_forest(&h, &vc.cover).map_err(|e| e.to_string())?;
    let options = BranchBoundOptions { budget, ub_hint: None, initial: Some(forest.clone()) };
    let solved = treedepth_branch_bound(&h.graph, &options);
    let list = |s: &tdred_core::VertexSet| s.iter().collect::<Vec<_>>();
    Ok(to_json(&GadgetDemo {
        parts: [list(&t.tripartition.part_a), list(&t.tripartition.part_b), list(&t.tripartition.part_c)],
        edges: t.graph.edges().collect(),
        vc: vc.size,
        cover: list(&vc.cover),
        ell,
        num_vertices: h.graph.num_vertices(),
        predicted_td: vc.size + ell + 1,
        certificate_depth: forest.depth().map_err(|e| e.to_string())?,
        certificate_valid: validate_forest(&h.graph, &forest).valid,
        td: solved.depth,
        td_exact: solved.exact,
    }))
}

/// Edge list of a small named graph, for the solver panel's presets.
pub fn preset_graph(name: &str, n: usize) -> Result<String, String> {
    let graph = match name {
        "path" => LabeledGraph::path(n),
        "cycle" => LabeledGraph::cycle(n),
        "clique" => LabeledGraph::complete(n),
        _ => return Err(format!("unknown preset {name:?}")),
    };
    Ok(write_pace_gr(&graph))
}

#[wasm_bindgen(js_name = reduceFormula)]
pub fn js_reduce_formula(dimacs: &str, p: usize) -> Result<String, JsValue> {
    reduce_formula(dimacs, p).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = solveTreedepth)]
pub fn js_solve_treedepth(gr: &str, budget: u32) -> Result<String, JsValue> {
    solve_treedepth(gr, budget as u64).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = gadgetDemo)]
pub fn js_gadget_demo(a: usize, b: usize, c: usize, edge_prob: f64, seed: u32, ell: usize, budget: u32) -> Result<String, JsValue> {
    gadget_demo([a, b, c], edge_prob, seed as u64, ell, budget as u64).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = presetGraph)]
pub fn js_preset_graph(name: &str, n: usize) -> Result<String, JsValue> {
    preset_graph(name, n).map_err(|e| JsValue::from_str(&e))
}
