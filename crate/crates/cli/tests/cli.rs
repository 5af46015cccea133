use std::process::{Command, Output};

fn sharp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sharp")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn eval_prints_the_product() {
    let out = sharp(&["eval", "R[1,5,1,2] # R[4,3]"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "R[1,5,1,5,3]");

    let out = sharp(&["eval", "M[1,2,1] # M[1,2]"]);
    assert_eq!(stdout(&out).trim(), "M[1,2,1,2] + M[1,2,1,3] + M[1,3,1,2]");
}

#[test]
fn eval_json_lists_terms() {
    let out = sharp(&["eval", "F[3] # F[1,2]", "--format", "json"]);
    assert!(out.status.success());
    let terms: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let pairs: Vec<(String, i64)> = terms
        .as_array()
        .unwrap()
        .iter()
        .map(|t| (t["label"].as_str().unwrap().to_string(), t["coefficient"].as_i64().unwrap()))
        .collect();
    assert_eq!(pairs, [("F[1,4]".into(), 3), ("F[2,3]".into(), 2), ("F[3,2]".into(), 1)]);
}

#[test]
fn forced_algebra_rejects_bad_labels() {
    let out = sharp(&["eval", "G[1,2,1]", "--algebra", "fqsym"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("invalid"));
}

#[test]
fn expand_lists_the_fiber() {
    let out = sharp(&["expand", "G[1,2]", "--alphabet", "2"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().collect::<Vec<_>>(), ["11", "12", "22"]);
}

#[test]
fn counts_match_the_reference_tables() {
    let out = sharp(&["count", "nonsecable-perms", "--max-n", "7"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("nonsecable: 2 2 8 44 296 2312"));

    let out = sharp(&["count", "nonsecable-packed", "--max-n", "6"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("nonsecable: 3 4 24 192 1872"));
}

#[test]
fn verify_runs_suites() {
    let out = sharp(&["verify", "oracle", "--algebra", "pqsym", "--max-deg", "5"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let out = sharp(&["verify", "interval", "--algebra", "wqsym", "--max-deg", "4"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["verify", "interval", "--algebra", "pbt", "--max-deg", "3"][..],
        &["verify", "oracle", "--algebra", "nope", "--max-deg", "3"],
        &["count", "nonsecable-perms", "--max-n", "1"],
        &["eval", "G[1,2] # "],
        &["frobnicate"],
    ] {
        assert_eq!(sharp(args).status.code(), Some(2), "{args:?}");
    }
}
