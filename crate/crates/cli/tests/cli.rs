use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_homnorden"));
    c.env_remove("HOMNORDEN_BINDINGS");
    c
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = bin().args(args).output().expect("binary runs");
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("homnorden-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn corpus_path(name: &str) -> String {
    format!("{}/corpus/{}.json", env!("CARGO_MANIFEST_DIR"), name)
}

#[test]
fn classify_abelian_example_from_file() {
    let (code, out, _) = run(&["classify", &corpus_path("abelian_kahler_norden_6d")]);
    assert_eq!(code, 0);
    for flag in ["kahler_norden", "holomorphic", "abelian_J", "flat", "hom_left_symmetric"] {
        assert!(out.contains(&format!("{}=pass", flag)), "{}", out);
    }
}

#[test]
fn connection_with_repeated_bind() {
    let (code, out, _) = run(&["connection", "kahler_norden_4d", "--bind", "A=1", "--bind", "B=1"]);
    assert_eq!(code, 0);
    assert!(out.contains("∇_{e2} e1 = e3\n"), "{}", out);
    assert_eq!(out.lines().filter(|l| l.starts_with('∇')).count(), 8);
}

#[test]
fn environment_supplies_bindings() {
    let out = bin().args(["connection", "kahler_norden_4d"]).env("HOMNORDEN_BINDINGS", "A=2,B=3").output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("∇_{e2} e2 = -3/2·e4"), "{}", text);
}

#[test]
fn corpus_passes() {
    let (code, out, _) = run(&["corpus"]);
    assert_eq!(code, 0, "{}", out);
    assert_eq!(out.lines().filter(|l| l.starts_with("PASS")).count(), 5);
    let (code, out, _) = run(&["corpus", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["passed"], true);
}

#[test]
fn require_sets_exit_status() {
    assert_eq!(run(&["classify", "kahler_norden_4d", "--require", "kahler_norden"]).0, 0);
    let (code, out, _) = run(&["classify", "kahler_norden_4d", "--require", "abelian_J"]);
    assert_eq!(code, 1);
    assert!(out.contains("required flag abelian_J is fail"));
    assert_eq!(run(&["classify", "norden_nonholomorphic_4d", "--require", "holomorphic"]).0, 1);
}

#[test]
fn classify_json_round_trips() {
    let (code, out, _) = run(&["classify", "kahler_norden_4d", "--json", "--bind", "A=2,B=3"]);
    assert_eq!(code, 0);
    let c = homnorden_core::classify::Classification::from_json(&out).unwrap();
    assert_eq!(c.bindings.len(), 1);
    assert_eq!(c.to_json() + "\n", out);
}

#[test]
fn validate_reports_classical_jacobi_as_information() {
    let (code, out, _) = run(&["validate", "norden_nonholomorphic_4d"]);
    assert_eq!(code, 0);
    assert!(out.contains("INFO classical Jacobi identity\n"), "{}", out);
    assert!(out.contains("(e2,e3,e4) defect -e2"), "{}", out);
    let (code, out, _) = run(&["validate", "norden_nonholomorphic_4d", "--json", "--bind", "a=2"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["binding"]["a"], "2");
}

#[test]
fn curvature_and_discovery() {
    let (code, out, _) = run(&["curvature", "kahler_norden_4d"]);
    assert_eq!(code, 0, "{}", out);
    assert!(out.contains("K(e1,e2)e1 = -e2\n"));
    assert!(out.contains("PASS second Bianchi identity"));
    let (code, out, _) = run(&["discover", "kahler_norden_4d", "--predicate", "kahler"]);
    assert_eq!(code, 0);
    assert!(out.contains("examined 384 signed permutations, found 2"), "{}", out);
    let (code, out, _) = run(&["discover", "kahler_norden_4d", "--metric-entries", "1,-1", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["examined"], 16);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["classify", "kahler_norden_4d", "--no-such-flag"]).0, 2);
    let (code, _, err) = run(&["connection", "kahler_norden_4d", "--bind", "Q=1"]);
    assert_eq!(code, 2);
    assert!(err.contains("unknown parameter `Q`"), "{}", err);
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("corpus"));
}

#[test]
fn input_errors_exit_three() {
    assert_eq!(run(&["validate", "/nonexistent/structure.json"]).0, 3);

    let diagonal = temp_file(
        "diagonal.json",
        r#"{"name": "d", "dimension": 2, "brackets": [{"i": 1, "j": 1, "coefficients": {"1": "1"}}], "phi": [[1, 0], [0, 1]]}"#,
    );
    let (code, _, err) = run(&["validate", diagonal.to_str().unwrap()]);
    assert_eq!(code, 3);
    assert!(err.contains("/brackets/0: diagonal bracket must be zero"), "{}", err);

    let singular = temp_file("singular.json", r#"{"name": "s", "dimension": 2, "phi": [["1", "2"], ["1/2", "1"]]}"#);
    let (code, _, err) = run(&["validate", singular.to_str().unwrap()]);
    assert_eq!(code, 3);
    assert!(err.contains("det phi = 0"), "{}", err);

    let syntax = temp_file("syntax.json", r#"{"name": "s", "dimension": 1, "phi": [["2*"]]}"#);
    let (code, _, err) = run(&["validate", syntax.to_str().unwrap()]);
    assert_eq!(code, 3);
    assert!(err.contains("/phi/0/0"), "{}", err);

    let (code, _, err) = run(&["classify", "kahler_norden_4d", "--bind", "A=0"]);
    assert_eq!(code, 3);
    assert!(err.contains("degenerate"), "{}", err);
}

#[test]
fn failing_check_exits_one() {
    let bad_metric = temp_file(
        "bad_metric.json",
        r#"{"name": "m", "dimension": 2, "phi": [[1, 0], [0, 1]], "metric": [[1, 1], [0, 1]]}"#,
    );
    let (code, out, _) = run(&["validate", bad_metric.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.contains("FAIL metric is symmetric"), "{}", out);
}
