use std::process::{Command, Output};

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_padic-lab"));
    cmd.env_remove("PADIC_LAB_SEED");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn lists_suites_in_order() {
    let out = run(&["list"]);
    assert!(out.status.success());
    let names: Vec<String> =
        stdout(&out).lines().map(|l| l.split_whitespace().next().unwrap().to_string()).collect();
    assert_eq!(names.len(), 10);
    assert_eq!(names[0], "cayley");
    assert_eq!(names[9], "hypothesis");
}

#[test]
fn roots_as_text_and_json() {
    let out = run(&["roots", "--group", "sp:4", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["group"], "sp:4");
    assert_eq!(v["roots"].as_array().unwrap().len(), 3);

    let out = run(&["roots", "--group", "gl:3"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 4);

    let out = run(&["roots", "--group", "u:3"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn config_file_with_flag_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# norm checks\nsuite = norm\np = 7\nsamples = 5\nseed = 11\n").unwrap();
    let out = run(&["run", "--config", cfg.to_str().unwrap(), "--samples", "3", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["suite"], "norm");
    assert_eq!(v["config"]["p"], 7);
    assert_eq!(v["config"]["samples"], 3);
    assert_eq!(v["config"]["seed"], 11);
}

#[test]
fn seed_falls_back_to_the_environment() {
    let out = bin()
        .args(["run", "--suite", "hypothesis", "--samples", "2", "--json"])
        .env("PADIC_LAB_SEED", "4242")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["config"]["seed"], 4242);

    let out = bin()
        .args(["run", "--suite", "hypothesis", "--samples", "2", "--seed", "5", "--json"])
        .env("PADIC_LAB_SEED", "4242")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["config"]["seed"], 5);
}

#[test]
fn bad_configuration_exits_with_three() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.cfg");
    std::fs::write(&cfg, "suite = cayley\nflavour = strange\n").unwrap();
    assert_eq!(run(&["run", "--config", cfg.to_str().unwrap()]).status.code(), Some(3));
    assert_eq!(run(&["run", "--suite", "nope"]).status.code(), Some(3));
    assert_eq!(run(&["run", "--suite", "cayley", "--p", "9"]).status.code(), Some(3));
    assert_eq!(run(&["run"]).status.code(), Some(3));
    let missing = dir.path().join("absent.cfg");
    assert_eq!(run(&["run", "--config", missing.to_str().unwrap()]).status.code(), Some(3));
}

#[test]
fn counterexamples_exit_with_one() {
    let out = run(&["run", "--suite", "alcove", "--samples", "50"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("certificates"));
}

#[test]
fn report_is_written_to_out() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&["run", "--suite", "cayley", "--samples", "5", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(!stdout(&out).is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["suite"], "cayley");
    assert_eq!(v["verdict"], "pass");
}
