//! Randomised verification suites.
//!
//! Each suite draws instances from a per-instance seed derived from the base
//! seed and the instance index, runs the exact oracles, and records one
//! verdict per check. Refuted reports carry the instance inline so that they
//! reproduce without the generator.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cnf::{
    gen_random_kcnf, max_sat_oracle_with_cap, parse_dimacs, write_dimacs, CnfError, CnfFormula,
    DEFAULT_ENUMERATION_CAP,
};
use crate::graph::{
    gen_random_graph, gen_random_tripartite, read_pace_gr, write_pace_gr, GraphError, LabeledGraph, Tripartition,
    VertexSet,
};
use crate::hardness::{eth_instance, gap_inequality, gap_instance, gen_gap_formula, HardnessError, Rational};
use crate::reduction::{
    build_clause_variable_graph, build_gadget, build_h_phi, cover_to_elimination_forest, cover_to_valuation,
    normalize_cover, predicted_td, predicted_vc, valuation_to_cover, ReductionError,
};
use crate::seed::instance_seed;
use crate::solvers::{
    check_clique_path_property, check_connected_ancestor_property, heuristic_forest, read_pace_tree,
    treedepth_branch_bound, treedepth_exact_dp_with_cap, validate_forest, vertex_cover_exact_with_cap,
    write_pace_tree, BranchBoundOptions, EliminationForest, SolverError, DEFAULT_DP_CAP, DEFAULT_VC_CAP,
};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Cnf(#[from] CnfError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Reduction(#[from] ReductionError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Hardness(#[from] HardnessError),
    #[error("{0}")]
    Sampling(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Confirmed,
    Refuted,
    SkippedBudget,
}

impl Verdict {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Confirmed
        } else {
            Verdict::Refuted
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Lemma6,
    Lemma3,
    Cor5,
    Obs,
    Mutation,
    Roundtrip,
    Hardness,
}

impl Suite {
    pub const ALL: [Suite; 7] =
        [Suite::Lemma6, Suite::Lemma3, Suite::Cor5, Suite::Obs, Suite::Mutation, Suite::Roundtrip, Suite::Hardness];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Lemma6 => "lemma6",
            Suite::Lemma3 => "lemma3",
            Suite::Cor5 => "cor5",
            Suite::Obs => "obs",
            Suite::Mutation => "mutation",
            Suite::Roundtrip => "roundtrip",
            Suite::Hardness => "hardness",
        }
    }

    pub fn default_count(self) -> usize {
        match self {
            Suite::Lemma6 | Suite::Lemma3 => 200,
            Suite::Cor5 | Suite::Roundtrip => 100,
            Suite::Obs => 500,
            Suite::Mutation => 50,
            Suite::Hardness => 20,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub count: usize,
    pub seed: u64,
    /// Clause width for formula suites.
    pub k: usize,
    pub max_n: usize,
    pub max_m: usize,
    /// Largest part size for `lemma3`.
    pub max_part: usize,
    pub dp_cap: usize,
    pub enum_cap: usize,
    pub vc_cap: usize,
    /// Expansion budget for the `cor5` branch-and-bound attempt; 0 skips it.
    pub bb_budget: u64,
    pub timings: bool,
}

impl SuiteConfig {
    pub fn new(suite: Suite, seed: u64) -> Self {
        let (max_n, max_m) = match suite {
            Suite::Obs | Suite::Mutation => (12, 0),
            Suite::Roundtrip => (6, 8),
            _ => (4, 4),
        };
        SuiteConfig {
            count: suite.default_count(),
            seed,
            k: 2,
            max_n,
            max_m,
            max_part: 3,
            dp_cap: DEFAULT_DP_CAP,
            enum_cap: DEFAULT_ENUMERATION_CAP,
            vc_cap: DEFAULT_VC_CAP,
            bb_budget: 0,
            timings: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub expected: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub observed: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
}

/// Instance data embedded in refuted reports.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub cnf: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub p: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub graph: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub tripartition: Option<Tripartition>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub tree: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub instance: usize,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub p: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ell: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub m_star: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub vc: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub td: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub td_exact: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub td_lower_bound: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub predicted_vc: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub predicted_td: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub certificate_depth: Option<usize>,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub elapsed_ms: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Witness>,
}

impl VerificationReport {
    fn new(suite: Suite, instance: usize, seed: u64) -> Self {
        VerificationReport { suite: suite.name().into(), instance, seed, ..Default::default() }
    }

    /// Worst verdict over all checks.
    pub fn verdict(&self) -> Verdict {
        let verdicts = || self.checks.iter().map(|c| c.verdict);
        if verdicts().any(|v| v == Verdict::Refuted) {
            Verdict::Refuted
        } else if verdicts().any(|v| v == Verdict::SkippedBudget) {
            Verdict::SkippedBudget
        } else {
            Verdict::Confirmed
        }
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    fn push(&mut self, name: impl Into<String>, ok: bool) {
        self.checks.push(Check { name: name.into(), verdict: Verdict::from_bool(ok), expected: None, observed: None, detail: None });
    }

    fn push_eq(&mut self, name: impl Into<String>, expected: usize, observed: usize) {
        self.checks.push(Check {
            name: name.into(),
            verdict: Verdict::from_bool(expected == observed),
            expected: Some(expected as i64),
            observed: Some(observed as i64),
            detail: None,
        });
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }
}

pub fn run_suite(suite: Suite, config: &SuiteConfig) -> Vec<Result<VerificationReport, HarnessError>> {
    (0..config.count).map(|i| run_instance(suite, config, i)).collect()
}

/// Instance `index` of a suite, reproducible without running the others.
pub fn run_instance(suite: Suite, config: &SuiteConfig, index: usize) -> Result<VerificationReport, HarnessError> {
    let seed = instance_seed(config.seed, index as u64);
    let start = Instant::now();
    let mut report = VerificationReport::new(suite, index, seed);
    let witness = match suite {
        Suite::Lemma6 => lemma6(config, seed, &mut report)?,
        Suite::Lemma3 => lemma3(config, seed, index, &mut report)?,
        Suite::Cor5 => cor5(config, seed, &mut report)?,
        Suite::Obs => observations(config, seed, &mut report)?,
        Suite::Mutation => mutation(config, seed, &mut report)?,
        Suite::Roundtrip => roundtrip(config, seed, &mut report)?,
        Suite::Hardness => hardness(config, seed, index, &mut report)?,
    };
    if report.verdict() == Verdict::Refuted {
        report.witness = Some(witness);
    }
    if config.timings {
        report.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(report)
}

fn random_formula(config: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<CnfFormula, HarnessError> {
    let k = config.k;
    let n = rng.gen_range(k..=config.max_n.max(k));
    let m = rng.gen_range(1..=config.max_m.max(1));
    Ok(gen_random_kcnf(n, m, k, m, rng.gen())?)
}

fn formula_witness(formula: &CnfFormula, p: usize) -> Witness {
    Witness { cnf: Some(write_dimacs(formula)), p: Some(p), ..Default::default() }
}

fn fill_formula_params(report: &mut VerificationReport, formula: &CnfFormula, p: usize) {
    report.k = Some(formula.k());
    report.p = Some(p);
    report.n = Some(formula.num_variables());
    report.m = Some(formula.num_clauses());
}

fn lemma6(config: &SuiteConfig, seed: u64, report: &mut VerificationReport) -> Result<Witness, HarnessError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let formula = random_formula(config, &mut rng)?;
    let p = formula.min_valid_p();
    fill_formula_params(report, &formula, p);
    let cvg = build_clause_variable_graph(&formula, p)?;
    let best = max_sat_oracle_with_cap(&formula, config.enum_cap)?;
    let min = vertex_cover_exact_with_cap(&cvg.graph, config.vc_cap)?;
    let predicted = predicted_vc(&formula, p, best.m_star);
    report.m_star = Some(best.m_star);
    report.vc = Some(min.size);
    report.predicted_vc = Some(predicted);
    report.push_eq("lemma6", predicted, min.size);

    let from_witness = valuation_to_cover(&cvg, &best.witness)?;
    report.push("witness_cover", cvg.graph.is_vertex_cover(&from_witness) && from_witness.len() == predicted);

    let normalized = normalize_cover(&cvg, &min.cover)?;
    report.push_eq("normalize_no_growth", min.size, normalized.len());
    let val = cover_to_valuation(&cvg, &normalized)?;
    report.push_eq("normalized_valuation_optimal", best.m_star, formula.count_satisfied(&val));
    Ok(formula_witness(&formula, p))
}

/// Random tripartite graph for the gadget suite whose largest gadget fits
/// the subset DP: parts of size up to `max_part`, shrunk to 2 after a few
/// oversized draws. Every tenth instance has part `C` edgeless.
fn gadget_core(
    config: &SuiteConfig,
    rng: &mut ChaCha8Rng,
    degenerate: bool,
) -> Result<(LabeledGraph, Tripartition, usize, VertexSet), HarnessError> {
    for attempt in 0..200 {
        let max_part = if attempt < 8 { config.max_part } else { config.max_part.min(2) };
        let sizes = [rng.gen_range(1..=max_part), rng.gen_range(1..=max_part), rng.gen_range(1..=max_part)];
        let edge_prob = *[0.3, 0.6].choose(rng).unwrap();
        let mut t = gen_random_tripartite(sizes, edge_prob, rng.gen());
        if degenerate {
            let kept: Vec<(usize, usize)> = t
                .graph
                .edges()
                .filter(|&(u, v)| !t.tripartition.part_c.contains(u) && !t.tripartition.part_c.contains(v))
                .collect();
            t.graph = LabeledGraph::from_edges(t.graph.num_vertices(), &kept)?;
        }
        let min = vertex_cover_exact_with_cap(&t.graph, config.vc_cap)?;
        let largest = t.graph.num_vertices() + 3 * (min.size + 2).max(1) + 3;
        if largest <= config.dp_cap {
            return Ok((t.graph, t.tripartition, min.size, min.cover));
        }
    }
    Err(HarnessError::Sampling("no tripartite graph fits the DP cap".into()))
}

fn lemma3(
    config: &SuiteConfig,
    seed: u64,
    index: usize,
    report: &mut VerificationReport,
) -> Result<Witness, HarnessError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let degenerate = index % 10 == 9;
    let (core, tri, vc, cover) = gadget_core(config, &mut rng, degenerate)?;
    report.vc = Some(vc);
    report.n = Some(core.num_vertices());
    for ell in (vc..=vc + 2).filter(|&l| l >= 1) {
        let h = build_gadget(&core, &tri, ell)?;
        let td = treedepth_exact_dp_with_cap(&h.graph, config.dp_cap)?;
        report.push_eq(format!("lemma3_ell{ell}"), vc + ell + 1, td.depth);
        let forest = cover_to_elimination_forest(&h, &cover)?;
        report.push(
            format!("certificate_ell{ell}"),
            validate_forest(&h.graph, &forest).valid && forest.depth()? == vc + ell + 1,
        );
    }
    if degenerate {
        report.push("degenerate_part_edgeless", tri.part_c.iter().all(|v| core.degree(v) == 0));
    }
    Ok(Witness { graph: Some(write_pace_gr(&core)), tripartition: Some(tri), ..Default::default() })
}

fn cor5(config: &SuiteConfig, seed: u64, report: &mut VerificationReport) -> Result<Witness, HarnessError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let formula = random_formula(config, &mut rng)?;
    let p = formula.min_valid_p();
    fill_formula_params(report, &formula, p);
    let h = build_h_phi(&formula, p)?;
    report.ell = Some(h.ell);
    let cvg = h.clause_variable.as_ref().expect("built from a formula");
    let best = max_sat_oracle_with_cap(&formula, config.enum_cap)?;
    let predicted = predicted_td(&formula, p, best.m_star);
    report.m_star = Some(best.m_star);
    report.predicted_td = Some(predicted);

    let cover = valuation_to_cover(cvg, &best.witness)?;
    let forest = cover_to_elimination_forest(&h, &cover)?;
    let depth = forest.depth()?;
    report.certificate_depth = Some(depth);
    report.push("certificate_valid", validate_forest(&h.graph, &forest).valid);
    report.push_eq("certificate_depth", predicted, depth);

    let min = vertex_cover_exact_with_cap(&cvg.graph, config.vc_cap)?;
    report.vc = Some(min.size);
    let min_forest = cover_to_elimination_forest(&h, &min.cover)?;
    report.push_eq("min_cover_certificate_depth", predicted, min_forest.depth()?);

    if config.bb_budget == 0 {
        report.checks.push(Check {
            name: "bb_exact".into(),
            verdict: Verdict::SkippedBudget,
            expected: Some(predicted as i64),
            observed: None,
            detail: Some("branch and bound disabled".into()),
        });
    } else {
        let options = BranchBoundOptions { budget: config.bb_budget, ub_hint: None, initial: Some(forest) };
        let r = treedepth_branch_bound(&h.graph, &options);
        report.td = Some(r.depth);
        report.td_exact = Some(r.exact);
        report.td_lower_bound = Some(r.lower_bound);
        let verdict = if r.depth < predicted || r.lower_bound > predicted {
            Verdict::Refuted
        } else if r.exact {
            Verdict::Confirmed
        } else {
            Verdict::SkippedBudget
        };
        report.checks.push(Check {
            name: "bb_exact".into(),
            verdict,
            expected: Some(predicted as i64),
            observed: Some(r.depth as i64),
            detail: Some(format!("lower bound {}", r.lower_bound)),
        });
    }
    Ok(formula_witness(&formula, p))
}

/// Random elimination forest: each component gets a uniformly random root.
fn random_forest(graph: &LabeledGraph, rng: &mut ChaCha8Rng) -> EliminationForest {
    let mut parent = vec![None; graph.num_vertices()];
    let mut stack: Vec<(VertexSet, Option<usize>)> = vec![(graph.vertex_set(), None)];
    while let Some((set, above)) = stack.pop() {
        let mut left = set.clone();
        while let Some(start) = left.first() {
            let comp = component(graph, &set, start);
            for v in comp.iter() {
                left.remove(v);
            }
            let members: Vec<usize> = comp.iter().collect();
            let root = *members.choose(rng).unwrap();
            parent[root] = above;
            let mut rest = comp;
            rest.remove(root);
            if !rest.is_empty() {
                stack.push((rest, Some(root)));
            }
        }
    }
    EliminationForest::new(parent)
}

fn component(graph: &LabeledGraph, within: &VertexSet, start: usize) -> VertexSet {
    let mut seen = VertexSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        for w in graph.neighbors(u).iter() {
            if within.contains(w) && seen.insert(w) {
                queue.push_back(w);
            }
        }
    }
    seen
}

fn observations(config: &SuiteConfig, seed: u64, report: &mut VerificationReport) -> Result<Witness, HarnessError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=config.max_n.max(1));
    let g = gen_random_graph(n, rng.gen_range(0.15..0.8), rng.gen());
    report.n = Some(n);
    let forest = if rng.gen_bool(0.5) { random_forest(&g, &mut rng) } else { heuristic_forest(&g) };

    let mut clique = VertexSet::from([rng.gen_range(0..n)]);
    let mut candidates: Vec<usize> = g.neighbors(clique.first().unwrap()).iter().collect();
    candidates.shuffle(&mut rng);
    for v in candidates {
        if clique.iter().all(|u| g.has_edge(u, v)) {
            clique.insert(v);
        }
    }
    report.push("clique_on_one_path", check_clique_path_property(&g, &forest, &clique)?);

    let target = rng.gen_range(1..=n);
    let start = rng.gen_range(0..n);
    let mut connected = VertexSet::from([start]);
    let mut frontier: Vec<usize> = g.neighbors(start).iter().collect();
    while connected.len() < target && !frontier.is_empty() {
        let v = frontier.swap_remove(rng.gen_range(0..frontier.len()));
        if connected.insert(v) {
            frontier.extend(g.neighbors(v).iter().filter(|&w| !connected.contains(w)));
        }
    }
    report.push("connected_set_has_top", check_connected_ancestor_property(&g, &forest, &connected)?);
    Ok(Witness { graph: Some(write_pace_gr(&g)), tree: Some(write_pace_tree(&forest)?), ..Default::default() })
}

fn is_ancestor_or_self(forest: &EliminationForest, a: usize, mut v: usize) -> bool {
    loop {
        if v == a {
            return true;
        }
        match forest.parent(v) {
            Some(p) => v = p,
            None => return false,
        }
    }
}

/// Reattaches the lower endpoint of a random edge so that the edge's
/// endpoints are no longer related; the validator must notice.
fn mutation(config: &SuiteConfig, seed: u64, report: &mut VerificationReport) -> Result<Witness, HarnessError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=config.max_n.max(2));
    let mut g = gen_random_graph(n, 0.4, rng.gen());
    if g.is_edgeless() {
        g.add_edge(0, 1)?;
    }
    report.n = Some(n);
    let mut forest = random_forest(&g, &mut rng);
    report.push("original_valid", validate_forest(&g, &forest).valid);

    let edges: Vec<(usize, usize)> = g.edges().collect();
    let (u, v) = *edges.choose(&mut rng).unwrap();
    let (top, low) = if is_ancestor_or_self(&forest, u, v) { (u, v) } else { (v, u) };
    let mut targets: Vec<Option<usize>> = vec![None];
    targets.extend((0..n).filter(|&w| !is_ancestor_or_self(&forest, top, w)).map(Some));
    forest.set_parent(low, *targets.choose(&mut rng).unwrap());
    report.push("mutated_rejected", !validate_forest(&g, &forest).valid);
    Ok(Witness { graph: Some(write_pace_gr(&g)), tree: Some(write_pace_tree(&forest)?), ..Default::default() })
}

fn roundtrip(config: &SuiteConfig, seed: u64, report: &mut VerificationReport) -> Result<Witness, HarnessError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = rng.gen_range(2..=3);
    let n = rng.gen_range(k..=config.max_n.max(k));
    let m = rng.gen_range(1..=config.max_m.max(1));
    let formula_seed: u64 = rng.gen();
    let formula = gen_random_kcnf(n, m, k, m, formula_seed)?;
    let p = formula.min_valid_p();
    fill_formula_params(report, &formula, p);

    let text = write_dimacs(&formula);
    report.push("dimacs", parse_dimacs(&text)? == formula);

    let h = build_h_phi(&formula, p)?;
    let gr = write_pace_gr(&h.graph);
    report.push("pace_gr", read_pace_gr(&gr)? == h.graph);

    let small = gen_random_graph(rng.gen_range(1..=12), 0.35, rng.gen());
    let forest = if rng.gen_bool(0.5) {
        treedepth_exact_dp_with_cap(&small, config.dp_cap)?.certificate
    } else {
        heuristic_forest(&h.graph)
    };
    let tree = write_pace_tree(&forest)?;
    report.push("pace_tree", read_pace_tree(&tree)? == forest);

    let again = gen_random_kcnf(n, m, k, m, formula_seed)?;
    let same_h = build_h_phi(&again, p)?;
    report.push("determinism", write_dimacs(&again) == text && write_pace_gr(&same_h.graph) == gr);
    Ok(formula_witness(&formula, p))
}

fn hardness(
    config: &SuiteConfig,
    seed: u64,
    index: usize,
    report: &mut VerificationReport,
) -> Result<Witness, HarnessError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if index.is_multiple_of(2) {
        let n = rng.gen_range(2..=3);
        let formula = gen_gap_formula(&vec![4; n], rng.gen())
            .ok_or_else(|| HarnessError::Sampling("no 4-regular 2-CNF pairing found".into()))?;
        let epsilon = Rational::new(1, 100_000);
        let gap = gap_instance(&formula, epsilon)?;
        let m = formula.num_clauses();
        fill_formula_params(report, &formula, 2);
        report.ell = Some(gap.gadget.ell);
        let best = max_sat_oracle_with_cap(&formula, config.enum_cap)?;
        let td = gap.predicted_td(best.m_star);
        report.m_star = Some(best.m_star);
        report.predicted_td = Some(td);

        let r = |x: usize| Rational::from_integer(x as i64);
        report.push("threshold_formula", gap.threshold_k == r(6 * m) - (r(1) - epsilon) * r(m) + r(8 * n));
        report.push_eq("td_formula", 6 * m - best.m_star + 8 * n + 1, td);
        let yes = r(best.m_star) >= (r(1) - epsilon) * r(m);
        let no = r(best.m_star) <= (Rational::new(251, 252) - epsilon) * r(m);
        let promise = if yes {
            td as i64 <= gap.yes_bound()
        } else if no {
            td as i64 >= gap.no_bound()
        } else {
            true
        };
        report.push("promise_side", promise);
        let (lhs, rhs) = gap_inequality(n, m, epsilon, gap.delta);
        report.push("gap_inequality", lhs < rhs);
        Ok(formula_witness(&formula, 2))
    } else {
        let n = rng.gen_range(3..=4);
        let m = rng.gen_range(1..=3);
        let formula = gen_random_kcnf(n, m, 3, 3, rng.gen())?;
        let eth = eth_instance(&formula, 3)?;
        fill_formula_params(report, &formula, eth.p);
        report.ell = Some(eth.gadget.ell);
        let best = max_sat_oracle_with_cap(&formula, config.enum_cap)?;
        let td = eth.predicted_td(best.m_star);
        report.m_star = Some(best.m_star);
        report.predicted_td = Some(td);
        report.push_eq("satisfiable_td_formula", 13 * m + 8 * eth.p * n + 1, eth.satisfiable_td);
        report.push_eq("distance_to_satisfiable", m - best.m_star, td - eth.satisfiable_td);
        report.push("satisfiable_iff_equal", (td == eth.satisfiable_td) == (best.m_star == m));
        Ok(formula_witness(&formula, eth.p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(suite: Suite, count: usize) -> SuiteConfig {
        SuiteConfig { count, ..SuiteConfig::new(suite, 11) }
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("lemma7".parse::<Suite>().is_err());
    }

    #[test]
    fn instances_reproduce_in_isolation() {
        for suite in Suite::ALL {
            let cfg = config(suite, 4);
            let all: Vec<String> = run_suite(suite, &cfg).into_iter().map(|r| r.unwrap().to_json()).collect();
            assert_eq!(run_instance(suite, &cfg, 3).unwrap().to_json(), all[3], "{suite}");
        }
    }

    #[test]
    fn structural_suites_confirm() {
        for suite in [Suite::Obs, Suite::Mutation, Suite::Roundtrip, Suite::Hardness] {
            for r in run_suite(suite, &config(suite, 20)) {
                let r = r.unwrap();
                assert_eq!(r.verdict(), Verdict::Confirmed, "{}", r.to_json());
                assert!(r.witness.is_none());
            }
        }
    }

    #[test]
    fn lemma3_small_batch() {
        for r in run_suite(Suite::Lemma3, &config(Suite::Lemma3, 10)) {
            let r = r.unwrap();
            assert_eq!(r.verdict(), Verdict::Confirmed, "{}", r.to_json());
        }
    }

    #[test]
    fn cor5_certificate_checks_and_skips() {
        let r = run_instance(Suite::Cor5, &config(Suite::Cor5, 1), 0).unwrap();
        assert_eq!(r.check("certificate_valid").unwrap().verdict, Verdict::Confirmed);
        assert_eq!(r.check("certificate_depth").unwrap().verdict, Verdict::Confirmed);
        assert_eq!(r.check("bb_exact").unwrap().verdict, Verdict::SkippedBudget);
    }

    #[test]
    fn refutations_carry_the_instance() {
        let mut r = VerificationReport::new(Suite::Lemma6, 0, 1);
        r.push_eq("x", 1, 2);
        assert_eq!(r.verdict(), Verdict::Refuted);
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["checks"][0]["verdict"], "refuted");
    }
}
