//! `tdred`: reduce, solve, verify and generate.
//!
//! Exit codes: 0 on success (all verdicts confirmed), 1 when `verify` finds a
//! refutation, 2 on usage, parse or I/O errors.

use std::error::Error;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use tdred_core::cnf::{gen_random_kcnf, max_sat_oracle_with_cap, parse_dimacs, write_dimacs, DEFAULT_ENUMERATION_CAP};
use tdred_core::graph::{gen_random_tripartite, read_pace_gr, write_pace_gr};
use tdred_core::hardness::{default_delta, eth_instance, gap_instance_with_delta, gen_gap_formula, Rational};
use tdred_core::harness::{run_instance, Suite, SuiteConfig, Verdict, VerificationReport};
use tdred_core::reduction::{build_h_phi, check_occurrences, InstanceSidecar};
use tdred_core::solvers::{
    treedepth_branch_bound, treedepth_exact_dp_with_cap, validate_forest, vertex_cover_exact_with_cap,
    write_pace_tree, BranchBoundOptions, DEFAULT_BB_BUDGET, DEFAULT_DP_CAP, DEFAULT_VC_CAP,
};
use tdred_core::CnfFormula;

type Result<T> = std::result::Result<T, Box<dyn Error>>;

/// Budget used by `verify` for the exact treedepth attempt when neither
/// `--budget` nor `TDRED_BB_BUDGET` is given.
const VERIFY_BB_BUDGET: u64 = 300;

#[derive(Parser)]
#[command(name = "tdred", version, about = "SAT to vertex cover to treedepth reduction laboratory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build H(φ, p) from a DIMACS CNF and write it as PACE .gr plus a JSON sidecar.
    Reduce(ReduceArgs),
    /// Run a treedepth or vertex-cover solver on a PACE .gr file.
    Solve(SolveArgs),
    /// Run randomized verification suites; JSON lines on stdout, summary on stderr.
    Verify(VerifyArgs),
    /// Generate deterministic instances.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
}

#[derive(Args)]
struct ReduceArgs {
    /// Input formula in DIMACS CNF.
    cnf: PathBuf,
    /// Block parameter; defaults to the smallest valid value.
    #[arg(short, long)]
    p: Option<usize>,
    /// Compute m* by enumeration and embed the predicted values in the sidecar.
    #[arg(long)]
    msat: bool,
    /// Output prefix; writes PREFIX.gr and PREFIX.json. Defaults to the input path without extension.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Also write the clause-variable graph G(φ, p) as PREFIX.g.gr.
    #[arg(long)]
    emit_g: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Algorithm {
    TdDp,
    TdBb,
    Vc,
}

#[derive(Args)]
struct SolveArgs {
    /// Input graph in PACE .gr format.
    graph: PathBuf,
    #[arg(short, long, value_enum, default_value = "td-dp")]
    algorithm: Algorithm,
    /// Expansion budget for td-bb (env TDRED_BB_BUDGET).
    #[arg(long)]
    budget: Option<u64>,
    /// Depth believed achievable, used by td-bb to prune.
    #[arg(long)]
    ub_hint: Option<usize>,
    /// Write the elimination forest here in PACE .tree format.
    #[arg(short, long)]
    tree: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite to run.
    #[arg(required_unless_present = "all", conflicts_with = "all")]
    suite: Option<Suite>,
    /// Run every suite with its default size.
    #[arg(long)]
    all: bool,
    #[arg(long)]
    count: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Clause width for formula suites.
    #[arg(short, long)]
    k: Option<usize>,
    #[arg(long)]
    max_n: Option<usize>,
    #[arg(long)]
    max_m: Option<usize>,
    #[arg(long)]
    max_part: Option<usize>,
    /// Branch-and-bound budget for cor5; 0 skips the exact attempt (env TDRED_BB_BUDGET).
    #[arg(long)]
    budget: Option<u64>,
    /// Directory for refuted instances (.json report plus .cnf, .gr and .tree files).
    #[arg(long)]
    artifacts: Option<PathBuf>,
    /// Include per-instance wall time in reports.
    #[arg(long)]
    timings: bool,
}

#[derive(Subcommand)]
enum GenKind {
    /// Random uniform k-CNF.
    Kcnf {
        #[arg(short)]
        n: usize,
        #[arg(short)]
        m: usize,
        #[arg(short, default_value_t = 2)]
        k: usize,
        /// Maximum occurrences per variable.
        #[arg(long)]
        max_occ: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output .cnf path; stdout when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Random tripartite graph; writes PREFIX.gr and PREFIX.json (the parts).
    Tripartite {
        #[arg(long, num_args = 3, value_names = ["A", "B", "C"])]
        parts: Vec<usize>,
        #[arg(long, default_value_t = 0.5)]
        edge_prob: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Gap instance H(φ, 2) from a 2-CNF in which every variable occurs 3 or 4 times.
    Gap {
        /// Input 2-CNF; when omitted one is generated from --occurrences.
        #[arg(long, conflicts_with = "occurrences")]
        cnf: Option<PathBuf>,
        /// Occurrence count (3 or 4) per variable for a generated formula.
        #[arg(long, num_args = 1.., required_unless_present = "cnf")]
        occurrences: Vec<usize>,
        /// Exact rational, e.g. 1/10000.
        #[arg(long, default_value = "1/10000")]
        epsilon: Rational,
        /// Exact rational in (0, 1/2604); defaults to 1/2605.
        #[arg(long)]
        delta: Option<Rational>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        msat: bool,
        /// Output prefix; writes PREFIX.cnf, PREFIX.gr and PREFIX.json.
        #[arg(short, long)]
        output: PathBuf,
    },
    /// ETH instance H(φ, ⌊B/2⌋) from a 3-CNF with at most B occurrences per variable.
    Eth {
        #[arg(long)]
        cnf: PathBuf,
        #[arg(short = 'B', long = "B")]
        b: usize,
        #[arg(long)]
        msat: bool,
        /// Output prefix; writes PREFIX.gr and PREFIX.json.
        #[arg(short, long)]
        output: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Reduce(args) => reduce(args),
        Command::Solve(args) => solve(args),
        Command::Verify(args) => verify(args),
        Command::Gen { kind } => generate(kind),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn env_cap<T: std::str::FromStr>(name: &str, default: T) -> Result<T> {
    match std::env::var(name) {
        Ok(v) => v.trim().parse().map_err(|_| format!("{name}={v:?} is not a valid number").into()),
        Err(_) => Ok(default),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()).into())
}

fn write(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| format!("{}: {e}", path.display()).into())
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn read_cnf(path: &Path) -> Result<CnfFormula> {
    parse_dimacs(&read(path)?).map_err(|e| format!("{}: {e}", path.display()).into())
}

fn m_star(formula: &CnfFormula, enabled: bool) -> Result<Option<usize>> {
    if !enabled {
        return Ok(None);
    }
    let cap = env_cap("TDRED_ENUM_CAP", DEFAULT_ENUMERATION_CAP)?;
    Ok(Some(max_sat_oracle_with_cap(formula, cap)?.m_star))
}

fn reduce(args: ReduceArgs) -> Result<ExitCode> {
    let formula = read_cnf(&args.cnf)?;
    let p = match args.p {
        Some(p) => {
            check_occurrences(&formula, p)?;
            p
        }
        None => formula.min_valid_p(),
    };
    let h = build_h_phi(&formula, p)?;
    let sidecar = InstanceSidecar::for_h_phi(&h, m_star(&formula, args.msat)?).expect("built from a formula");
    let prefix = args.output.unwrap_or_else(|| args.cnf.with_extension(""));
    write(&with_suffix(&prefix, ".gr"), &write_pace_gr(&h.graph))?;
    write(&with_suffix(&prefix, ".json"), &sidecar.to_json())?;
    if args.emit_g {
        let g = &h.clause_variable.as_ref().expect("built from a formula").graph;
        write(&with_suffix(&prefix, ".g.gr"), &write_pace_gr(g))?;
    }
    eprintln!(
        "H(φ, {p}): {} vertices, {} edges, ℓ = {}",
        sidecar.num_vertices, sidecar.num_edges, sidecar.ell
    );
    Ok(ExitCode::SUCCESS)
}

fn solve(args: SolveArgs) -> Result<ExitCode> {
    let text = read(&args.graph)?;
    let graph = read_pace_gr(&text).map_err(|e| format!("{}: {e}", args.graph.display()))?;
    let report = match args.algorithm {
        Algorithm::Vc => {
            let vc = vertex_cover_exact_with_cap(&graph, env_cap("TDRED_VC_CAP", DEFAULT_VC_CAP)?)?;
            let cover: Vec<usize> = vc.cover.iter().map(|v| v + 1).collect();
            json!({ "algorithm": "vc", "size": vc.size, "exact": true, "cover": cover })
        }
        Algorithm::TdDp | Algorithm::TdBb => {
            let (name, result) = if let Algorithm::TdDp = args.algorithm {
                ("td-dp", treedepth_exact_dp_with_cap(&graph, env_cap("TDRED_DP_CAP", DEFAULT_DP_CAP)?)?)
            } else {
                let budget = match args.budget {
                    Some(b) => b,
                    None => env_cap("TDRED_BB_BUDGET", DEFAULT_BB_BUDGET)?,
                };
                let options = BranchBoundOptions { budget, ub_hint: args.ub_hint, initial: None };
                ("td-bb", treedepth_branch_bound(&graph, &options))
            };
            debug_assert!(validate_forest(&graph, &result.certificate).valid);
            if let Some(path) = &args.tree {
                write(path, &write_pace_tree(&result.certificate)?)?;
            }
            json!({
                "algorithm": name,
                "depth": result.depth,
                "exact": result.exact,
                "lower_bound": result.lower_bound,
                "upper_bound": result.depth,
            })
        }
    };
    println!("{report}");
    Ok(ExitCode::SUCCESS)
}

fn verify(args: VerifyArgs) -> Result<ExitCode> {
    let suites = match args.suite {
        Some(s) => vec![s],
        None => Suite::ALL.to_vec(),
    };
    let budget = match args.budget {
        Some(b) => b,
        None => env_cap("TDRED_BB_BUDGET", VERIFY_BB_BUDGET)?,
    };
    let dp_cap = env_cap("TDRED_DP_CAP", DEFAULT_DP_CAP)?;
    let enum_cap = env_cap("TDRED_ENUM_CAP", DEFAULT_ENUMERATION_CAP)?;
    if let Some(dir) = &args.artifacts {
        fs::create_dir_all(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
    }
    let mut any_refuted = false;
    let mut out = io::stdout().lock();
    for suite in suites {
        let defaults = SuiteConfig::new(suite, args.seed);
        let config = SuiteConfig {
            count: args.count.unwrap_or(defaults.count),
            k: args.k.unwrap_or(defaults.k),
            max_n: args.max_n.unwrap_or(defaults.max_n),
            max_m: args.max_m.unwrap_or(defaults.max_m),
            max_part: args.max_part.unwrap_or(defaults.max_part),
            dp_cap,
            enum_cap,
            bb_budget: budget,
            timings: args.timings,
            ..defaults
        };
        let (mut confirmed, mut refuted, mut skipped) = (0, 0, 0);
        for index in 0..config.count {
            let report = run_instance(suite, &config, index)?;
            if let Err(e) = writeln!(out, "{}", report.to_json()) {
                if e.kind() == io::ErrorKind::BrokenPipe {
                    return Ok(ExitCode::from(if any_refuted || report.verdict() == Verdict::Refuted { 1 } else { 0 }));
                }
                return Err(e.into());
            }
            match report.verdict() {
                Verdict::Confirmed => confirmed += 1,
                Verdict::SkippedBudget => skipped += 1,
                Verdict::Refuted => {
                    refuted += 1;
                    if let Some(dir) = &args.artifacts {
                        dump_artifacts(dir, &report)?;
                    }
                }
            }
        }
        any_refuted |= refuted > 0;
        eprintln!(
            "{suite}: {} instances, {confirmed} confirmed, {refuted} refuted, {skipped} skipped-budget (seed {})",
            config.count, config.seed
        );
    }
    Ok(if any_refuted { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn dump_artifacts(dir: &Path, report: &VerificationReport) -> Result<()> {
    let prefix = dir.join(format!("{}-{}", report.suite, report.instance));
    let pretty = serde_json::to_string_pretty(report)?;
    write(&with_suffix(&prefix, ".json"), &pretty)?;
    if let Some(w) = &report.witness {
        for (text, suffix) in [(&w.cnf, ".cnf"), (&w.graph, ".gr"), (&w.tree, ".tree")] {
            if let Some(text) = text {
                write(&with_suffix(&prefix, suffix), text)?;
            }
        }
    }
    Ok(())
}

fn generate(kind: GenKind) -> Result<ExitCode> {
    match kind {
        GenKind::Kcnf { n, m, k, max_occ, seed, output } => {
            let formula = gen_random_kcnf(n, m, k, max_occ.unwrap_or(m.max(1)), seed)?;
            match output {
                Some(path) => write(&path, &write_dimacs(&formula))?,
                None => print!("{}", write_dimacs(&formula)),
            }
        }
        GenKind::Tripartite { parts, edge_prob, seed, output } => {
            if !(0.0..=1.0).contains(&edge_prob) {
                return Err(format!("edge probability {edge_prob} is outside [0, 1]").into());
            }
            let t = gen_random_tripartite([parts[0], parts[1], parts[2]], edge_prob, seed);
            write(&with_suffix(&output, ".gr"), &write_pace_gr(&t.graph))?;
            write(&with_suffix(&output, ".json"), &serde_json::to_string_pretty(&t.tripartition)?)?;
        }
        GenKind::Gap { cnf, occurrences, epsilon, delta, seed, msat, output } => {
            let formula = match cnf {
                Some(path) => read_cnf(&path)?,
                None => gen_gap_formula(&occurrences, seed)
                    .ok_or("no 2-CNF with these occurrence counts (each must be 3 or 4, with an even total)")?,
            };
            let instance = gap_instance_with_delta(&formula, epsilon, delta.unwrap_or_else(default_delta))?;
            let sidecar = instance.sidecar(m_star(&formula, msat)?);
            write(&with_suffix(&output, ".cnf"), &write_dimacs(&formula))?;
            write(&with_suffix(&output, ".gr"), &write_pace_gr(&instance.gadget.graph))?;
            write(&with_suffix(&output, ".json"), &sidecar.to_json())?;
            eprintln!(
                "gap instance: k = {}, yes if td ≤ {}, no if td ≥ {}",
                instance.threshold_k,
                instance.yes_bound(),
                instance.no_bound()
            );
        }
        GenKind::Eth { cnf, b, msat, output } => {
            let formula = read_cnf(&cnf)?;
            let instance = eth_instance(&formula, b)?;
            let sidecar = instance.sidecar(m_star(&formula, msat)?);
            write(&with_suffix(&output, ".gr"), &write_pace_gr(&instance.gadget.graph))?;
            write(&with_suffix(&output, ".json"), &sidecar.to_json())?;
            eprintln!("eth instance: p = {}, satisfiable iff td = {}", instance.p, instance.satisfiable_td);
        }
    }
    Ok(ExitCode::SUCCESS)
}
