use std::path::Path;
use std::process::{Command, Output};

fn tricup(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tricup"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn build_then_code_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let torus = dir.path().join("torus.cplx");
    let built = tricup(&["build", "--torus", "3", "--out", path(&torus)]);
    assert!(built.status.success(), "{}", stderr(&built));
    let code = tricup(&["code", "--in", path(&torus), "--q", "1"]);
    assert!(code.status.success());
    let text = stdout(&code);
    assert!(text.lines().any(|l| l == "N=27"), "{text}");
    assert!(text.lines().any(|l| l == "K=2"));
    assert!(text.lines().any(|l| l == "commutes=true"));
}

#[test]
fn code_file_gives_the_same_distance_report() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("t4.code");
    assert!(tricup(&["code", "--in", "torus:4", "--q", "1", "--out", path(&file)]).status.success());
    let direct = tricup(&["distance", "--in", "torus:4", "--q", "1", "--seed", "5"]);
    let stored = tricup(&["distance", "--code", path(&file), "--seed", "5"]);
    assert!(direct.status.success() && stored.status.success());
    assert_eq!(stdout(&direct), stdout(&stored));
    assert!(stdout(&direct).lines().any(|l| l == "dZ=4"));
}

#[test]
fn circuit_and_hypergraph_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let spec = "circle:3*circle:3*circle:3";
    let circuit = dir.path().join("t3.ccz");
    assert!(tricup(&["circuit", "--in", spec, "--out", path(&circuit)]).status.success());
    let synthesized = tricup(&["logical-action", "--in", spec]);
    let loaded = tricup(&["logical-action", "--in", spec, "--circuit", path(&circuit)]);
    assert_eq!(stdout(&synthesized), stdout(&loaded));

    let graph = dir.path().join("t3.hg");
    assert!(tricup(&["hypergraph", "--in", spec, "--out", path(&graph)]).status.success());
    let from_complex = tricup(&["fountain", "--in", spec]);
    let from_file = tricup(&["fountain", "--hypergraph", path(&graph)]);
    assert!(from_file.status.success(), "{}", stderr(&from_file));
    assert_eq!(stdout(&from_complex), stdout(&from_file));
    assert!(stdout(&from_file).lines().any(|l| l == "magic_count=3"));
}

#[test]
fn search_prints_the_minimal_set() {
    let out = tricup(&["search", "--qmax", "31"]);
    assert!(out.status.success());
    assert!(stdout(&out).lines().any(|l| l == "31 9 16 12 22 15 19"));
}

#[test]
fn exit_codes() {
    let bad_args = tricup(&["distance", "--in", "torus:3"]);
    assert_eq!(bad_args.status.code(), Some(2));
    assert!(stderr(&bad_args).starts_with("error=usage "));

    let unknown = tricup(&["code", "--in", "klein:3", "--q", "1"]);
    assert_eq!(unknown.status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let disk = dir.path().join("disk.cplx");
    std::fs::write(&disk, "dim 2 vertices 3\n0 1 2\n").unwrap();
    let open = tricup(&["verify", "--in", path(&disk), "--degrees", "1,1,0", "--seed", "1", "--trials", "3"]);
    assert_eq!(open.status.code(), Some(1), "{}{}", stdout(&open), stderr(&open));
    assert!(stderr(&open).starts_with("error=failed "));

    let ok = tricup(&["bad-dims", "--set", "9,16;12,22;15,19"]);
    assert_eq!(ok.status.code(), Some(0));
}

#[test]
fn seeded_runs_are_byte_identical() {
    let args = ["verify", "--in", "torus:3", "--degrees", "1,1,0", "--trials", "50", "--seed", "11"];
    let a = tricup(&args);
    let b = tricup(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}
