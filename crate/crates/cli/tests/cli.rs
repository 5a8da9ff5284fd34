use std::path::PathBuf;
use std::process::Command;

fn problem(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../problems")
        .join(name)
}

fn cy3(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_cy3"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).expect("utf-8"),
    )
}

fn run_json(cmd: &str, file: &str, extra: &[&str]) -> (i32, serde_json::Value) {
    let path = problem(file);
    let mut args = vec![cmd, "--input", path.to_str().unwrap()];
    args.extend_from_slice(extra);
    let (code, stdout) = cy3(&args);
    (code, serde_json::from_str(&stdout).expect("json report"))
}

#[test]
fn analyze_golden_is_rank_one() {
    let (code, v) = run_json("analyze", "golden.json", &[]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"]["kind"], "group");
    assert_eq!(v["verdict"]["verdict"]["kind"], "almost_abelian_rank_one");
    assert_eq!(v["verdict"]["verdict"]["witness"]["kind"], "character");
    assert_eq!(
        v["verdict"]["verdict"]["witness"]["fourth_root"],
        "3/2 + 1/2√5"
    );
}

#[test]
fn analyze_unipotent_has_tau_witness() {
    let (code, v) = run_json("analyze", "unipotent.json", &[]);
    assert_eq!(code, 0);
    let w = &v["verdict"]["verdict"]["witness"];
    assert_eq!(w["kind"], "tau");
    assert_eq!(w["generator_value"], 1);
}

#[test]
fn factor_six_xyz_exits_two() {
    let (code, v) = run_json("factor", "sixxyz.json", &[]);
    assert_eq!(code, 2);
    assert_eq!(v["verdict"]["kind"], "geometric_inconsistency");
    assert_eq!(v["verdict"]["mechanism"], "lefschetz");
}

#[test]
fn enumerate_bound_guard() {
    let (code, _) = run_json("enumerate", "golden.json", &["--bound", "9"]);
    assert_eq!(code, 1);
    let (code, v) = run_json("enumerate", "enumerate_golden.json", &[]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"]["bound"], 2);
}

#[test]
fn finite_group_and_inconclusive_factor() {
    let (code, v) = run_json("analyze", "permutations.json", &[]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"]["verdict"]["order"], 3);
    let (code, _) = run_json("factor", "permutations.json", &[]);
    assert_eq!(code, 3);
}

#[test]
fn bad_inputs_exit_one() {
    let (code, stdout) = cy3(&["analyze", "--input", problem("zero_c2.json").to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(stdout.is_empty());

    let dir = tempfile::tempdir().unwrap();
    let det2 = dir.path().join("det2.json");
    std::fs::write(
        &det2,
        r#"{"cubic": {"z3": 1}, "c2": [0, 0, 1], "matrices": [[[2,0,0],[0,1,0],[0,0,1]]]}"#,
    )
    .unwrap();
    let (code, _) = cy3(&["classify", "--input", det2.to_str().unwrap()]);
    assert_eq!(code, 1);

    let (code, _) = cy3(&["classify", "--input", "/nonexistent/problem.json"]);
    assert_eq!(code, 1);
}

#[test]
fn reports_are_deterministic() {
    let path = problem("golden_quadric.json");
    let args = ["analyze", "--input", path.to_str().unwrap()];
    assert_eq!(cy3(&args).1, cy3(&args).1);
}

#[test]
fn text_format() {
    let path = problem("unipotent.json");
    let (code, text) = cy3(&["factor", "--input", path.to_str().unwrap(), "--format", "text"]);
    assert_eq!(code, 0);
    assert!(text.contains("E = 3, F = 1"));
    assert!(text.contains("reconstructs the cubic: true"));
}
