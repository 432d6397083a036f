use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn tdred(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tdred"))
        .args(args)
        .current_dir(dir)
        .env_remove("TDRED_DP_CAP")
        .env_remove("TDRED_ENUM_CAP")
        .env_remove("TDRED_BB_BUDGET")
        .output()
        .expect("binary runs")
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn reduce_writes_graph_and_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("f.cnf"), "p cnf 2 2\n1 2 0\n-1 2 0\n").unwrap();

    let out = tdred(dir.path(), &["reduce", "f.cnf", "-p", "1", "--emit-g"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let gr = fs::read_to_string(dir.path().join("f.gr")).unwrap();
    assert!(gr.starts_with("p tdp 47 "));
    assert!(fs::read_to_string(dir.path().join("f.g.gr")).unwrap().starts_with("p tdp 14 "));
    let sidecar = json(&dir.path().join("f.json"));
    assert_eq!(sidecar["ell"], 10);
    assert!(sidecar.get("predicted_td").is_none());

    let out = tdred(dir.path(), &["reduce", "f.cnf", "--msat", "-o", "with"]);
    assert!(out.status.success());
    let sidecar = json(&dir.path().join("with.json"));
    assert_eq!((sidecar["m_star"].as_u64(), sidecar["predicted_td"].as_u64()), (Some(2), Some(19)));
}

#[test]
fn reduce_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = tdred(dir.path(), &["reduce", "missing.cnf"]);
    assert_eq!(out.status.code(), Some(2));

    fs::write(dir.path().join("occ.cnf"), "p cnf 2 4\n1 2 0\n1 -2 0\n-1 2 0\n1 2 0\n").unwrap();
    let out = tdred(dir.path(), &["reduce", "occ.cnf", "-p", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("x1"));

    let out = tdred(dir.path(), &["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn solve_path_clique_and_cap() {
    let dir = tempfile::tempdir().unwrap();
    let path: String = (1..8).map(|i| format!("{i} {}\n", i + 1)).collect();
    fs::write(dir.path().join("p8.gr"), format!("p tdp 8 7\n{path}")).unwrap();
    let out = tdred(dir.path(), &["solve", "p8.gr", "-a", "td-dp", "-t", "p8.tree"]);
    assert!(out.status.success());
    let report = stdout_json(&out);
    assert_eq!((report["depth"].as_u64(), report["exact"].as_bool()), (Some(4), Some(true)));
    let tree = fs::read_to_string(dir.path().join("p8.tree")).unwrap();
    assert_eq!(tree.lines().next(), Some("4"));
    assert_eq!(tree.lines().filter(|l| l.trim() == "0").count(), 1);

    let k6: String = (1..=6).flat_map(|u| (u + 1..=6).map(move |v| format!("{u} {v}\n"))).collect();
    fs::write(dir.path().join("k6.gr"), format!("p tdp 6 15\n{k6}")).unwrap();
    for budget in ["1", "1000"] {
        let out = tdred(dir.path(), &["solve", "k6.gr", "-a", "td-bb", "--budget", budget]);
        let report = stdout_json(&out);
        assert_eq!((report["depth"].as_u64(), report["exact"].as_bool()), (Some(6), Some(true)));
    }
    let out = tdred(dir.path(), &["solve", "k6.gr", "-a", "vc"]);
    assert_eq!(stdout_json(&out)["size"], 5);

    let big: String = (1..30).map(|i| format!("{i} {}\n", i + 1)).collect();
    fs::write(dir.path().join("p30.gr"), format!("p tdp 30 29\n{big}")).unwrap();
    let out = tdred(dir.path(), &["solve", "p30.gr"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("branch-and-bound"));
}

#[test]
fn verify_streams_json_lines_and_sets_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let out = tdred(dir.path(), &["verify", "obs", "--count", "10", "--seed", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let lines: Vec<Value> =
        String::from_utf8(out.stdout).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 10);
    assert!(lines.iter().enumerate().all(|(i, r)| r["instance"] == i && r["suite"] == "obs"));
    assert!(String::from_utf8_lossy(&out.stderr).contains("10 confirmed"));

    // the vertex-cover closed form fails on some formulas; refutations exit 1 and leave artifacts
    let out = tdred(dir.path(), &["verify", "lemma6", "--count", "40", "--artifacts", "arts"]);
    assert_eq!(out.status.code(), Some(1));
    let refuted = String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .filter(|l| l.contains("\"refuted\""))
        .count();
    assert!(refuted > 0);
    let cnfs = fs::read_dir(dir.path().join("arts")).unwrap().filter(|e| {
        e.as_ref().unwrap().path().extension().is_some_and(|x| x == "cnf")
    });
    assert_eq!(cnfs.count(), refuted);
}

#[test]
fn verify_instance_is_reproducible_alone() {
    let dir = tempfile::tempdir().unwrap();
    let all = tdred(dir.path(), &["verify", "roundtrip", "--count", "8", "--seed", "5"]);
    let again = tdred(dir.path(), &["verify", "roundtrip", "--count", "8", "--seed", "5"]);
    assert_eq!(all.stdout, again.stdout);
    let last = String::from_utf8(all.stdout).unwrap().lines().last().unwrap().to_string();
    assert!(last.contains("\"instance\":7"));
}

#[test]
fn gen_tripartite_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["gen", "tripartite", "--parts", "3", "3", "3", "--edge-prob", "0.4", "--seed", "9", "-o", "t"];
    assert!(tdred(dir.path(), &args).status.success());
    let first = (fs::read(dir.path().join("t.gr")).unwrap(), fs::read(dir.path().join("t.json")).unwrap());
    assert!(tdred(dir.path(), &args).status.success());
    assert_eq!(first.0, fs::read(dir.path().join("t.gr")).unwrap());
    assert_eq!(first.1, fs::read(dir.path().join("t.json")).unwrap());
    let parts = json(&dir.path().join("t.json"));
    assert_eq!(parts["part_c"], serde_json::json!([6, 7, 8]));
}

#[test]
fn gen_gap_and_eth_sidecars() {
    let dir = tempfile::tempdir().unwrap();
    let out = tdred(dir.path(), &["gen", "gap", "--occurrences", "4", "4", "--msat", "-o", "gap"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let s = json(&dir.path().join("gap.json"));
    assert_eq!(s["p"], 2);
    assert_eq!(s["threshold_k"], "90001/2500");
    assert_eq!(s["gap_factor"], "2606/2605");

    // too few clauses for ε: the gap inequality fails
    let out = tdred(dir.path(), &["gen", "gap", "--occurrences", "3", "3", "4", "4", "--epsilon", "1/2", "-o", "bad"]);
    assert_eq!(out.status.code(), Some(2));

    fs::write(dir.path().join("e.cnf"), "p cnf 3 2\n1 2 3 0\n-1 -2 3 0\n").unwrap();
    let out = tdred(dir.path(), &["gen", "eth", "--cnf", "e.cnf", "-B", "3", "--msat", "-o", "eth"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let s = json(&dir.path().join("eth.json"));
    // 13m + 8pn + 1 with p = 1
    assert_eq!(s["satisfiable_td"], 13 * 2 + 8 * 3 + 1);
    assert_eq!(s["predicted_td"], s["satisfiable_td"]);
}

#[test]
fn gen_kcnf_to_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let out = tdred(dir.path(), &["gen", "kcnf", "-n", "5", "-m", "4", "-k", "3", "--seed", "2"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("p cnf 5 4"));
    assert_eq!(text.lines().count(), 5);
}
