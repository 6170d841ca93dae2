use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn qsched(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsched")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path(p: &std::path::Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn c5_layered_prints_eleven() {
    let o = qsched(&["schedule", path(&fixture("c5.json")), "--method", "layered"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "makespan 11.000000\n");
}

#[test]
fn c5_exact_writes_artifacts_that_validate() {
    let dir = tempfile::tempdir().unwrap();
    let (s, g, lp) = (dir.path().join("s.json"), dir.path().join("g.svg"), dir.path().join("m.lp"));
    let o = qsched(&[
        "schedule",
        path(&fixture("c5.json")),
        "--method",
        "exact",
        "--out",
        path(&s),
        "--gantt",
        path(&g),
        "--lp",
        path(&lp),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "status optimal\nmakespan 10.000000\n");
    assert!(std::fs::read_to_string(&g).unwrap().starts_with("<svg"));
    assert!(std::fs::read_to_string(&lp).unwrap().contains("Binaries"));

    let v = qsched(&["validate", path(&fixture("c5.json")), path(&s)]);
    assert_eq!(v.status.code(), Some(0));
    assert_eq!(stdout(&v), "schedule ok\n");
}

#[test]
fn gantt_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let render = |name: &str| {
        let p = dir.path().join(name);
        qsched(&["schedule", path(&fixture("c5.json")), "--method", "greedy", "--gantt", path(&p)]);
        std::fs::read(p).unwrap()
    };
    assert_eq!(render("a.svg"), render("b.svg"));
}

#[test]
fn empty_circuit_exact_is_zero() {
    let o = qsched(&["schedule", path(&fixture("empty.json")), "--method", "exact"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("makespan 0.000000\n"));
}

#[test]
fn star_s5() {
    let o = qsched(&["star", "--n", "5", "--gamma", "1,1,1,0.01", "--beta", "0.01,0.01,0.01,0.01,1.99"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("greedy 5.000000\n"));
    assert!(out.contains("exact 3.020000\n"));
    assert!(out.contains("gap n/a"));
}

#[test]
fn star_length_mismatch_is_an_input_error() {
    let o = qsched(&["star", "--n", "4", "--gamma", "1,1", "--beta", "1,1,1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!o.stderr.is_empty());
}

#[test]
fn overlapping_schedule_fails_validation() {
    let o = qsched(&["validate", path(&fixture("shared.json")), path(&fixture("overlap_schedule.json"))]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("overlap: gates 0 and 1 on qubit 0"));
}

#[test]
fn cyclic_circuit_is_rejected() {
    let o = qsched(&["schedule", path(&fixture("cyclic.json")), "--method", "greedy"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cycle"));
}

#[test]
fn exit_codes_for_usage_and_io() {
    assert_eq!(qsched(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(qsched(&["schedule", "x.json", "--method", "fastest"]).status.code(), Some(64));
    let o = qsched(&["schedule", "/definitely/not/here.json", "--method", "greedy"]);
    assert_eq!(o.status.code(), Some(74));
    assert!(o.stdout.is_empty());
}

#[test]
fn sweep_writes_both_csvs() {
    let dir = tempfile::tempdir().unwrap();
    let (out, agg) = (dir.path().join("r.csv"), dir.path().join("a.csv"));
    let o = qsched(&[
        "sweep",
        "--graphs",
        path(&data("graph3c.g6")),
        path(&data("graph4c.g6")),
        "--seed",
        "5",
        "--jobs",
        "2",
        "--require-connected",
        "--out",
        path(&out),
        "--agg",
        path(&agg),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("records 8\n"));
    assert!(stdout(&o).contains("std sample"));
    let records = std::fs::read_to_string(&out).unwrap();
    assert_eq!(records.lines().count(), 9);
    assert!(records.starts_with("vertices,graph_index,edges,seed,t_layered"));
    let rows = std::fs::read_to_string(&agg).unwrap();
    assert!(rows.starts_with("vertices,edges,comparison,n_graphs,n_excluded,mean_imp_pct,std_imp_pct\n"));
    assert!(rows.contains("layered_vs_exact") && rows.contains("greedy_vs_exact"));
}

#[test]
fn sweep_rejects_disconnected_graphs_when_asked() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("d.g6");
    std::fs::write(&g, "Bg\nB?\n").unwrap();
    let (out, agg) = (dir.path().join("r.csv"), dir.path().join("a.csv"));
    let args = ["sweep", "--graphs", path(&g), "--seed", "1", "--out", path(&out), "--agg", path(&agg)];
    assert_eq!(qsched(&args).status.code(), Some(0));
    let mut strict = args.to_vec();
    strict.push("--require-connected");
    assert_eq!(qsched(&strict).status.code(), Some(1));
}
