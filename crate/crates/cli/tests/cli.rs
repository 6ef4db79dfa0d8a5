use std::path::Path;
use std::process::{Command, Output};

fn placer(dir: &Path, args: &[&str], seed_env: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_placer"));
    cmd.args(args).current_dir(dir).env_remove("PLACER_SEED");
    if let Some(seed) = seed_env {
        cmd.env("PLACER_SEED", seed);
    }
    cmd.output().expect("spawn placer")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn non_uniform_lengths_need_epsilon() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(code(&placer(d, &["gen", "--family", "tightness", "--objects", "5", "--out", "t.json"], None)), 0);
    let out = placer(d, &["solve", "--mode", "dp", "--in", "t.json"], None);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("--epsilon"));
    let out = placer(d, &["solve", "--mode", "dp", "--epsilon", "0.5", "--in", "t.json", "--out", "r.json"], None);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(code(&placer(d, &["verify", "--in", "t.json", "--report", "r.json"], None)), 0);
}

#[test]
fn page_placement_without_limits_points_to_dp() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(code(&placer(d, &["gen", "--family", "random", "--out", "i.json"], None)), 0);
    let out = placer(d, &["solve", "--mode", "pp", "--in", "i.json"], None);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("--mode dp"));
}

#[test]
fn seed_environment_variable_overrides_flag() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    placer(d, &["gen", "--family", "random", "--seed", "4", "--out", "a.json"], None);
    placer(d, &["gen", "--family", "random", "--seed", "9", "--out", "b.json"], Some("4"));
    placer(d, &["gen", "--family", "random", "--seed", "9", "--out", "c.json"], None);
    let read = |f: &str| std::fs::read_to_string(d.join(f)).unwrap();
    assert_eq!(read("a.json"), read("b.json"));
    assert_ne!(read("a.json"), read("c.json"));
}

#[test]
fn exit_codes_for_infeasible_and_budget() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let gen = ["gen", "--family", "random", "--min-capacity", "0", "--max-capacity", "0", "--out", "z.json"];
    assert_eq!(code(&placer(d, &gen, None)), 0);
    assert_eq!(code(&placer(d, &["solve", "--mode", "dp", "--in", "z.json", "--out", "r.json"], None)), 2);
    assert_eq!(code(&placer(d, &["verify", "--in", "z.json", "--report", "r.json"], None)), 0);
    assert_eq!(code(&placer(d, &["oracle", "--mode", "dp", "--in", "z.json"], None)), 2);
    let out = placer(d, &["oracle", "--mode", "dp", "--budget", "5", "--in", "z.json"], None);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("budget"));
}

#[test]
fn replica_caps_and_guard() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    placer(d, &["gen", "--family", "random", "--seed", "2", "--out", "i.json"], None);
    std::fs::write(d.join("caps.json"), "[1, 1, 1, 1, 1, 1]").unwrap();
    let solve = placer(d, &["solve", "--mode", "dp", "--caps-file", "caps.json", "--in", "i.json", "--out", "r.json"], None);
    let oracle = placer(d, &["oracle", "--mode", "dp", "--replica-cap", "1", "--in", "i.json", "--out", "o.json"], None);
    assert_eq!(code(&solve), code(&oracle));
    let cost = |f: &str| {
        let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(d.join(f)).unwrap()).unwrap();
        v["total_cost"].clone()
    };
    assert_eq!(cost("r.json"), cost("o.json"));
    let out = placer(d, &["solve", "--mode", "dp", "--max-clients", "2", "--in", "i.json"], None);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("--max-clients"));
}

#[test]
fn bad_arguments_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&placer(dir.path(), &["solve", "--bogus"], None)), 1);
    assert_eq!(code(&placer(dir.path(), &["solve", "--mode", "dp", "--in", "missing.json"], None)), 1);
}
