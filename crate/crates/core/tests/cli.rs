use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use dataflow_partition::{load_pgt, PartitionSolution};

fn dfpart(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dfpart"))
        .args(args)
        .output()
        .unwrap()
}

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn gen_is_deterministic_and_loadable() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for out in [&a, &b] {
        let o = dfpart(&[
            "gen",
            "chain",
            "--n",
            "3",
            "--seed",
            "0",
            "--output",
            s(out),
        ]);
        assert_eq!(o.status.code(), Some(0));
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let g = load_pgt(fs::File::open(&a).unwrap()).unwrap();
    assert_eq!(g.len(), 3);

    let o = dfpart(&["gen", "fork-join", "--width", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(load_pgt(&o.stdout[..]).unwrap().len(), 4);

    let o = dfpart(&[
        "gen",
        "layered-imaging",
        "--layers",
        "6",
        "--width",
        "4",
        "--seed",
        "1",
    ]);
    let g = load_pgt(&o.stdout[..]).unwrap();
    assert_eq!(g.len(), 24);
    assert_eq!(g.topological_order().len(), 24);

    assert_eq!(dfpart(&["gen", "chain", "--n", "0"]).status.code(), Some(1));
}

#[test]
fn partition_reports_and_writes_solution() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sol.json");
    let o = dfpart(&[
        "partition",
        "--input",
        &fixture("fork_4core.json"),
        "--cores",
        "8",
        "--output",
        s(&out),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stdout).contains("m_star: 1"));
    let g = load_pgt(fs::File::open(fixture("fork_4core.json")).unwrap()).unwrap();
    let sol = PartitionSolution::from_json(&g, &fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(sol.m_star(), 1);

    let o = dfpart(&[
        "partition",
        "--input",
        &fixture("fork_4core.json"),
        "--cores",
        "4",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["m_star"], 2);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("never.json");
    let missing = dir.path().join("missing.json");
    let o = dfpart(&["partition", "--input", s(&missing), "--output", s(&out)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!out.exists());

    let o = dfpart(&[
        "partition",
        "--input",
        &fixture("fork_8core.json"),
        "--cores",
        "4",
        "--output",
        s(&out),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("worker1"));
    assert!(!out.exists());

    let o = dfpart(&["curve", "--input", s(&missing)]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn simulate_flags_violations() {
    let dir = tempfile::tempdir().unwrap();
    let sol = dir.path().join("sol.json");
    let trace = dir.path().join("trace.csv");
    let summary = dir.path().join("summary.json");
    let g = fixture("fork_8core.json");
    assert_eq!(
        dfpart(&[
            "partition",
            "--input",
            &g,
            "--cores",
            "8",
            "--output",
            s(&sol)
        ])
        .status
        .code(),
        Some(0)
    );
    let o = dfpart(&[
        "simulate",
        "--input",
        &g,
        "--solution",
        s(&sol),
        "--output",
        s(&trace),
        "--summary",
        s(&summary),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(fs::read_to_string(&trace)
        .unwrap()
        .starts_with("partition_id,time,cores,memory_mb\n"));
    let v: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&summary).unwrap()).unwrap();
    assert_eq!(v["makespan"], 16.0);

    let bad = fixture("fork_8core_colocated.solution.json");
    let o = dfpart(&["simulate", "--input", &g, "--solution", &bad]);
    assert_eq!(o.status.code(), Some(3));

    // solution for a different graph
    let chain = dir.path().join("chain.json");
    dfpart(&["gen", "chain", "--n", "2", "--output", s(&chain)]);
    let o = dfpart(&["simulate", "--input", s(&chain), "--solution", s(&sol)]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn empty_graph_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("empty.json");
    fs::write(&g, r#"{"bandwidth": 1, "drops": [], "edges": []}"#).unwrap();
    let sol = fixture("fork_8core_colocated.solution.json");
    let o = dfpart(&["simulate", "--input", s(&g), "--solution", &sol]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn curve_of_chain_ends_at_one_partition() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("chain.json");
    dfpart(&["gen", "chain", "--n", "5", "--output", s(&g)]);
    let o = dfpart(&["curve", "--input", s(&g)]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    let rows: Vec<(usize, f64)> = text
        .lines()
        .skip(1)
        .map(|l| {
            let (m, t) = l.split_once(',').unwrap();
            (m.parse().unwrap(), t.parse().unwrap())
        })
        .collect();
    assert_eq!(rows.first().unwrap().0, 5);
    let (m, t) = *rows.last().unwrap();
    assert_eq!(m, 1);
    assert!(rows.iter().all(|&(_, x)| t <= x));
    assert!(rows.windows(2).all(|w| w[1].1 <= w[0].1));
}
