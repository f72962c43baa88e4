use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_yangian-forge"));
    c.env_remove("YANGIAN_FORGE_WORKERS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("yangian-forge-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

const SMALL_SHUFFLE: [&str; 9] = ["--y1-max", "1", "--serre-max", "0", "--commutator-max", "1", "--y4-max", "0", "--order"];

#[test]
fn passing_suite_exits_zero() {
    let o = run(&["check", "fock", "--level", "3", "--mmax", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = String::from_utf8(o.stdout).unwrap();
    assert!(out.contains("suite fock: PASS"), "{out}");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["check", "bogus"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["check", "geom", "--r", "1,2"]).status.code(), Some(2));
    assert_eq!(run(&["calibrate", "--mode", "sideways"]).status.code(), Some(2));
    assert_eq!(run(&["check", "geom", "--quiver", "/nonexistent/q.json"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn forced_paper_normalization_fails() {
    let o = run(&["calibrate", "--mode", "paper", "--configs", "none"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["calibrate", "--mode", "none", "--configs", "none"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn reports_are_byte_identical() {
    let mut args = vec!["report", "--suite", "shuffle"];
    args.extend(SMALL_SHUFFLE);
    args.push("3");
    let (a, b) = (tmp("a.json"), tmp("b.json"));
    let o1 = bin().args(&args).args(["--json", a.to_str().unwrap()]).env("YANGIAN_FORGE_WORKERS", "1").output().unwrap();
    let o2 = bin().args(&args).args(["--json", b.to_str().unwrap()]).env("YANGIAN_FORGE_WORKERS", "4").output().unwrap();
    assert_eq!(o1.status.code(), Some(0));
    assert_eq!(o1.stdout, o2.stdout);
    let (ja, jb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ja, jb);
    let v: serde_json::Value = serde_json::from_slice(&ja).unwrap();
    assert_eq!(v["schema"], "yangian-forge/report/v1");
    assert_eq!(v["pass"], true);
}

#[test]
fn workers_flag_and_env() {
    let o = bin().args(["--workers", "2", "check", "geom", "--n", "1"]).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    let o = bin().args(["check", "geom", "--n", "1"]).env("YANGIAN_FORGE_WORKERS", "zero").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn quiver_file_input() {
    let ok = run(&["check", "geom", "--quiver", concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/jordan_n3.json")]);
    assert_eq!(ok.status.code(), Some(0));

    // critical, and neither condition holds: the I12 orbit is only e1
    let p = tmp("split.json");
    std::fs::write(&p, r#"{"n":2,"r":[0,0,1],"B3":[["0","0"],["0","0"]],"I12":[["1"],["0"]],"B1":[["0","0"],["0","0"]]}"#).unwrap();
    let o = run(&["check", "geom", "--quiver", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));

    let bad = tmp("bad.json");
    std::fs::write(&bad, r#"{"n":2,"r":[0,0,1],"I12":[["1"],["0"]],"B3":[["0","0"],["1","0"]]}"#).unwrap();
    let o = run(&["check", "geom", "--quiver", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let out = String::from_utf8(o.stdout).unwrap();
    assert!(out.contains("skipped (off the critical locus)"), "{out}");
}
